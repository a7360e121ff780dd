//! Explicit polynomials in F{X} as monomial → coefficient maps.
//!
//! Deliberately naive: this is the reference the circuit algorithms are
//! tested against, so every operation follows its definition directly.

mod brute;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitBuilder, Gate, GateId, Monomial};
use crate::field::{FieldSpec, Scalar};

pub use brute::{all_monomials, brute_factor, reducible_products, BruteFactor};

/// Term limit used when none is given.
pub const DEFAULT_MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenseError {
    #[error("expansion exceeded {limit} terms")]
    TermBudgetExceeded { limit: usize },
    #[error("enumeration needs {needed} candidates, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("exhaustive factoring needs a prime field")]
    InfiniteField,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A key of a dense polynomial. Monomials sort by their bracket encoding and
/// the constant term comes last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Monomial(Monomial),
    Constant,
}

impl Term {
    pub fn degree(&self) -> usize {
        match self {
            Term::Monomial(m) => m.degree(),
            Term::Constant => 0,
        }
    }

    pub fn monomial(&self) -> Option<&Monomial> {
        match self {
            Term::Monomial(m) => Some(m),
            Term::Constant => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    field: FieldSpec,
    terms: BTreeMap<Term, Scalar>,
}

impl DensePoly {
    pub fn zero(field: FieldSpec) -> Self {
        DensePoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, s: Scalar) -> Self {
        Self::from_terms(field, [(Term::Constant, s)])
    }

    pub fn monomial(field: FieldSpec, m: Monomial, coeff: Scalar) -> Self {
        Self::from_terms(field, [(Term::Monomial(m), coeff)])
    }

    pub fn var(field: FieldSpec, index: usize) -> Self {
        Self::monomial(field, Monomial::var(index), field.one())
    }

    /// Sums the given terms; repeated keys accumulate.
    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Term, Scalar)>) -> Self {
        let mut p = DensePoly::zero(field);
        for (t, s) in terms {
            p.accumulate(t, &s);
        }
        p
    }

    fn accumulate(&mut self, t: Term, s: &Scalar) {
        assert_eq!(s.field(), self.field, "coefficient from a different field");
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v = &*v + s;
                if v.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, s.clone());
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Term::degree).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(&Term::Monomial(m.clone())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Term::Constant).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn max_var(&self) -> usize {
        self.terms.keys().filter_map(Term::monomial).map(Monomial::max_var).max().unwrap_or(0)
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        let mut out = self.clone();
        for (t, s) in &other.terms {
            out.accumulate(t.clone(), s);
        }
        out
    }

    pub fn sub(&self, other: &DensePoly) -> DensePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DensePoly {
        self.scalar_mul(&-self.field.one())
    }

    pub fn scalar_mul(&self, s: &Scalar) -> DensePoly {
        DensePoly::from_terms(self.field, self.terms.iter().map(|(t, c)| (t.clone(), c * s)))
    }

    /// Ordered, nonassociative product: monomials `a` and `b` join to `(a b)`.
    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        let mut out = DensePoly::zero(self.field);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                let t = match (ta, tb) {
                    (Term::Constant, t) | (t, Term::Constant) => t.clone(),
                    (Term::Monomial(a), Term::Monomial(b)) => Term::Monomial(Monomial::product(a.clone(), b.clone())),
                };
                out.accumulate(t, &(ca * cb));
            }
        }
        out
    }

    /// `c_m(f) + Σ c_{(m r)}(f)·r`: the coefficient of `m` itself plus every
    /// monomial whose left half is `m`, with that half removed.
    pub fn left_derivative(&self, m: &Monomial) -> DensePoly {
        self.derivative(m, |l, _| l, |_, r| r)
    }

    /// Mirror of [`DensePoly::left_derivative`]: strips right halves equal to `m`.
    pub fn right_derivative(&self, m: &Monomial) -> DensePoly {
        self.derivative(m, |_, r| r, |l, _| l)
    }

    fn derivative<'a>(
        &'a self,
        m: &Monomial,
        matched: impl Fn(&'a Monomial, &'a Monomial) -> &'a Monomial,
        rest: impl Fn(&'a Monomial, &'a Monomial) -> &'a Monomial,
    ) -> DensePoly {
        let mut out = DensePoly::constant(self.field, self.coefficient(m));
        for (t, c) in &self.terms {
            if let Term::Monomial(Monomial::Node(l, r)) = t {
                if matched(l, r) == m {
                    out.accumulate(Term::Monomial(rest(l, r).clone()), c);
                }
            }
        }
        out
    }

    pub fn homogeneous_part(&self, j: usize) -> DensePoly {
        let terms = self.terms.iter().filter(|(t, _)| t.degree() == j).map(|(t, c)| (t.clone(), c.clone()));
        DensePoly { field: self.field, terms: terms.collect() }
    }

    /// Swaps left and right children in every monomial.
    pub fn mirror(&self) -> DensePoly {
        let terms = self.terms.iter().map(|(t, c)| {
            let t = match t {
                Term::Monomial(m) => Term::Monomial(m.mirror()),
                Term::Constant => Term::Constant,
            };
            (t, c.clone())
        });
        DensePoly { field: self.field, terms: terms.collect() }
    }

    /// A sum-of-monomials circuit over at least `num_vars` variables.
    pub fn to_circuit(&self, num_vars: usize) -> Circuit {
        let mut b = CircuitBuilder::new(self.field, num_vars.max(self.max_var()));
        let mut parts = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            let g = match t {
                Term::Monomial(m) => b.monomial(m),
                Term::Constant => b.one(),
            };
            parts.push(b.scale(c, g));
        }
        let root = b.add(parts);
        b.extract(root)
    }

    /// Parses the text form written by `Display`: one `<coeff> <monomial>` per
    /// line and `const <coeff>` for the constant term. Blank lines and
    /// `#` comments are ignored; an empty text is the zero polynomial.
    pub fn parse(field: FieldSpec, text: &str) -> Result<DensePoly, DenseError> {
        let mut p = DensePoly::zero(field);
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| DenseError::Parse { line, message };
            let (head, tail) =
                content.split_once(char::is_whitespace).ok_or_else(|| err("expected two fields".into()))?;
            let tail = tail.trim();
            let (term, coeff) = if head == "const" {
                (Term::Constant, tail)
            } else {
                (Term::Monomial(tail.parse().map_err(|e| err(format!("{e}")))?), head)
            };
            let s = field.parse_scalar(coeff).map_err(|e| err(e.to_string()))?;
            p.accumulate(term, &s);
        }
        Ok(p)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, c) in &self.terms {
            match t {
                Term::Monomial(m) => writeln!(f, "{c} {m}")?,
                Term::Constant => writeln!(f, "const {c}")?,
            }
        }
        Ok(())
    }
}

fn value(vals: &[Option<DensePoly>], g: GateId) -> &DensePoly {
    vals[g].as_ref().expect("children precede parents")
}

/// Expands `c` bottom-up, failing once any gate's expansion has more than
/// `max_terms` terms.
pub fn expand(c: &Circuit, max_terms: usize) -> Result<DensePoly, DenseError> {
    let field = c.field();
    let mut live = vec![false; c.size()];
    live[c.output()] = true;
    for id in (0..c.size()).rev() {
        if live[id] {
            for k in c.gate(id).children() {
                live[k] = true;
            }
        }
    }
    let mut vals: Vec<Option<DensePoly>> = vec![None; c.size()];
    for (id, gate) in c.gates().iter().enumerate() {
        if !live[id] {
            continue;
        }
        let p = match gate {
            Gate::Input(v) => DensePoly::var(field, v.index()),
            Gate::Const(s) => DensePoly::constant(field, s.clone()),
            Gate::Mul(l, r) => value(&vals, *l).mul(value(&vals, *r)),
            Gate::Add(children) => {
                let mut acc = DensePoly::zero(field);
                for &k in children {
                    acc = acc.add(value(&vals, k));
                }
                acc
            }
        };
        if p.len() > max_terms {
            return Err(DenseError::TermBudgetExceeded { limit: max_terms });
        }
        vals[id] = Some(p);
    }
    Ok(vals[c.output()].take().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn m(text: &str) -> Monomial {
        text.parse().unwrap()
    }

    fn poly(field: FieldSpec, text: &str) -> DensePoly {
        DensePoly::parse(field, text).unwrap()
    }

    #[test]
    fn expands_sums_and_products() {
        let c = parse_circuit("field Q\nvars 2\nx = var x1\ny = var x2\np = mul x y\ns = add p p\noutput s\n").unwrap();
        assert_eq!(expand(&c, DEFAULT_MAX_TERMS).unwrap().to_string(), "2 (x1 x2)\n");
        let c = parse_circuit("field Q\nvars 1\nx = var x1\none = const 1\ns = add x one\np = mul s s\noutput p\n")
            .unwrap();
        assert_eq!(expand(&c, DEFAULT_MAX_TERMS).unwrap().to_string(), "2 x1\n1 (x1 x1)\nconst 1\n");
    }

    #[test]
    fn bracketings_stay_apart() {
        let a = DensePoly::monomial(q(), m("((x1 x2) x1)"), q().one());
        let b = DensePoly::monomial(q(), m("(x1 (x2 x1))"), q().one());
        assert_ne!(a, b);
        assert_eq!(a.add(&b).len(), 2);
    }

    #[test]
    fn term_budget() {
        let c =
            parse_circuit("field Q\nvars 2\nx = var x1\ny = var x2\ns = add x y\np = mul s s\nq = mul p p\noutput q\n")
                .unwrap();
        assert_eq!(expand(&c, 10), Err(DenseError::TermBudgetExceeded { limit: 10 }));
        assert_eq!(expand(&c, 16).unwrap().len(), 16);
    }

    #[test]
    fn derivatives_follow_the_definition() {
        let f = poly(q(), "3 ((x1 x2) x2)\n2 (x1 (x2 x2))\n");
        assert_eq!(f.left_derivative(&m("(x1 x2)")).to_string(), "3 x2\n");
        assert_eq!(f.right_derivative(&m("(x2 x2)")).to_string(), "2 x1\n");
        assert_eq!(f.left_derivative(&m("x1")).to_string(), "2 (x2 x2)\n");
        let g = poly(q(), "5 (x1 x2)\n");
        assert_eq!(g.left_derivative(&m("(x1 x2)")).to_string(), "const 5\n");
    }

    #[test]
    fn parts_mirror_and_products() {
        let f = poly(q(), "1 (x1 x1)\n1 x1\n");
        assert_eq!(f.homogeneous_part(1).to_string(), "1 x1\n");
        let g = poly(q(), "1 ((x1 x2) x1)\nconst 4\n");
        assert_eq!(g.mirror().to_string(), "1 (x1 (x2 x1))\nconst 4\n");
        let x = DensePoly::var(q(), 1);
        let y = DensePoly::var(q(), 2);
        assert_eq!(x.mul(&y).to_string(), "1 (x1 x2)\n");
    }

    #[test]
    fn text_round_trip_and_circuit() {
        let f5 = FieldSpec::prime(5).unwrap();
        let f = poly(f5, "4 (x1 (x2 x1))\n1 x2\nconst 3\n");
        assert_eq!(poly(f5, &f.to_string()), f);
        assert_eq!(expand(&f.to_circuit(2), DEFAULT_MAX_TERMS).unwrap(), f);
        assert!(matches!(DensePoly::parse(f5, "1 (x1\n"), Err(DenseError::Parse { line: 1, .. })));
    }
}
