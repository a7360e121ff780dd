//! Deterministic polynomial identity testing with certificate monomials.
//!
//! For each degree `j`, the coefficients of a monomial `m` in the sum gates of
//! degree `j` form a vector `v_m`. The coefficients of a product monomial in
//! a product gate are the products of the halves' coefficients in the gate's
//! operands, so a basis of `{v_m : deg m = j}` can be assembled from products
//! of basis monomials of lower degree. Its size never exceeds the number of
//! sum gates in the layer. The circuit is zero exactly when every basis
//! member of the output's degree has a zero output coordinate.

mod echelon;
pub(crate) mod engine;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::circuit::{is_alternating, normalize_gates, Circuit, CircuitBuilder, Gate, GateId, Monomial};
use crate::field::Scalar;
use crate::transform::{homogenize_in, subtree_table, SubtreeIndex};
use echelon::Echelon;
use engine::{ColumnSet, Engine};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PitError {
    #[error("circuit is not homogeneous (or carries no degree annotation)")]
    NotHomogeneous,
    #[error("circuit is not in alternating sum/product form")]
    NotNormalized,
}

/// Coefficients of one monomial in the sum gates of one layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVector {
    pub layer_degree: usize,
    /// One entry per sum gate of the layer, zeros included.
    pub entries: BTreeMap<GateId, Scalar>,
}

/// A maximal independent set of coefficient vectors for one layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub degree: usize,
    pub members: Vec<(Monomial, CoeffVector)>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A monomial with a nonzero coefficient. `monomial` is `None` for the
/// constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub monomial: Option<Monomial>,
    pub coefficient: Scalar,
    pub degree: usize,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.monomial {
            Some(m) => write!(f, "{m} {}", self.coefficient),
            None => write!(f, "1 {}", self.coefficient),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Zero,
    Nonzero(Certificate),
}

impl Verdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, Verdict::Zero)
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Zero => None,
            Verdict::Nonzero(c) => Some(c),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Zero => write!(f, "ZERO"),
            Verdict::Nonzero(c) => write!(f, "NONZERO {c}"),
        }
    }
}

/// A verdict with the bases it was derived from.
#[derive(Debug, Clone)]
pub struct PitReport {
    pub verdict: Verdict,
    /// Indexed by degree; entry 0 is always empty.
    pub bases: Vec<Basis>,
    /// Number of sum gates per degree in the circuit the bases live on.
    pub sum_gates: Vec<usize>,
}

impl PitReport {
    /// Whether every basis is no larger than its layer's sum-gate count.
    pub fn within_bound(&self) -> bool {
        self.bases.iter().all(|b| b.len() <= self.sum_gates.get(b.degree).copied().unwrap_or(0))
    }
}

fn certificate_of(engine: &Engine, root: usize) -> Verdict {
    match engine.certificate(root) {
        None => Verdict::Zero,
        Some((monomial, coefficient)) => {
            let degree = monomial.as_ref().map_or(0, Monomial::degree);
            Verdict::Nonzero(Certificate { monomial, coefficient, degree })
        }
    }
}

fn report_bases(engine: &Engine) -> Vec<Basis> {
    (0..=engine.top_degree())
        .map(|j| {
            let gates = if j == 0 { &[][..] } else { &engine.layer(j).gates[..] };
            let members = if j == 0 { &[][..] } else { engine.basis(j) };
            Basis {
                degree: j,
                members: members
                    .iter()
                    .map(|m| {
                        let entries = gates.iter().copied().zip(m.vector.iter().cloned()).collect();
                        (m.monomial.clone(), CoeffVector { layer_degree: j, entries })
                    })
                    .collect(),
            }
        })
        .collect()
}

fn count_sums(gates: &[Gate], degrees: &[Option<usize>], top: usize) -> Vec<usize> {
    let mut counts = vec![0; top + 1];
    for (g, d) in gates.iter().zip(degrees) {
        if let (Gate::Add(_), Some(d)) = (g, d) {
            if *d <= top {
                counts[*d] += 1;
            }
        }
    }
    counts
}

/// Per-gate homogeneous degree of a DAG whose gates are all homogeneous;
/// `None` for zero constants and anything built only from them.
fn gate_degrees(gates: &[Gate]) -> Vec<Option<usize>> {
    let mut out: Vec<Option<usize>> = Vec::with_capacity(gates.len());
    for g in gates {
        let d = match g {
            Gate::Input(_) => Some(1),
            Gate::Const(s) => (!s.is_zero()).then_some(0),
            Gate::Mul(l, r) => out[*l].zip(out[*r]).map(|(a, b)| a + b),
            Gate::Add(children) => children.iter().filter_map(|&k| out[k]).max(),
        };
        out.push(d);
    }
    out
}

/// Identity test for a normalized, degree-annotated homogeneous circuit.
pub fn pit_homogeneous(c: &Circuit) -> Result<Verdict, PitError> {
    pit_homogeneous_report(c).map(|r| r.verdict)
}

/// [`pit_homogeneous`] together with the layer bases, whose vectors are
/// indexed by the sum gates of `c`.
pub fn pit_homogeneous_report(c: &Circuit) -> Result<PitReport, PitError> {
    let degrees = c.degrees().ok_or(PitError::NotHomogeneous)?;
    if !is_alternating(c) {
        return Err(PitError::NotNormalized);
    }
    let degrees: Vec<Option<usize>> = degrees.iter().map(|&d| Some(d)).collect();
    let engine = Engine::new(c.field(), c.num_vars(), c.gates(), |g| degrees[g], &[c.output()], ColumnSet::Sums);
    Ok(PitReport {
        verdict: certificate_of(&engine, 0),
        bases: report_bases(&engine),
        sum_gates: count_sums(c.gates(), &degrees, engine.top_degree()),
    })
}

/// Identity test for any circuit. A nonzero circuit is certified by a
/// monomial of its highest nonzero degree.
pub fn pit(c: &Circuit) -> Verdict {
    pit_report(c).verdict
}

/// [`pit`] with the bases of the run. The homogeneous parts are normalized
/// into one shared DAG and tested together; the bases and sum-gate counts
/// refer to that DAG.
pub fn pit_report(c: &Circuit) -> PitReport {
    let mut b = CircuitBuilder::new(c.field(), c.num_vars());
    let root = b.import(c);
    let parts: Vec<GateId> = homogenize_in(&mut b, root).into_iter().filter(|&g| !b.is_zero(g)).collect();
    let (gates, roots) = b.extract_roots(&parts);
    let (gates, roots) = normalize_gates(c.field(), &gates, &roots);
    let degrees = gate_degrees(&gates);
    let engine = Engine::new(c.field(), c.num_vars(), &gates, |g| degrees[g], &roots, ColumnSet::Sums);
    let verdict =
        (0..roots.len()).rev().map(|i| certificate_of(&engine, i)).find(|v| !v.is_zero()).unwrap_or(Verdict::Zero);
    PitReport { verdict, bases: report_bases(&engine), sum_gates: count_sums(&gates, &degrees, engine.top_degree()) }
}

/// Whether the coefficient vector of `m` over the gates of `basis`, computed
/// directly from `c`, lies in the span of `basis`. `c` must be the circuit
/// the basis was built on and `m` must have the basis degree.
pub fn spanning_check(c: &Circuit, basis: &Basis, m: &Monomial) -> bool {
    assert_eq!(m.degree(), basis.degree, "monomial degree differs from the basis degree");
    let gates: Vec<GateId> = match basis.members.first() {
        Some((_, v)) => v.entries.keys().copied().collect(),
        None => return direct_vector(c, m, &[]).is_empty(),
    };
    let target = direct_vector(c, m, &gates);
    let mut ech = Echelon::new(gates.len());
    for (_, v) in &basis.members {
        let row: Vec<Scalar> = v.entries.values().cloned().collect();
        ech.insert(&row);
    }
    ech.contains(&target)
}

fn direct_vector(c: &Circuit, m: &Monomial, gates: &[GateId]) -> Vec<Scalar> {
    let index = SubtreeIndex::new(m);
    let live: Vec<GateId> = (0..c.size()).collect();
    let (_, rows) = subtree_table(c.gates(), c.field(), &live, &index);
    gates.iter().map(|&g| rows[g][index.top()].clone()).collect()
}

/// The least monomial of the top-degree part of `c` in split order (left
/// degree, then left half, then right half), with its coefficient. `None`
/// for the zero polynomial; a nonzero constant yields `(None, c)`.
pub fn least_monomial(c: &Circuit) -> Option<(Option<Monomial>, Scalar)> {
    let mut b = CircuitBuilder::new(c.field(), c.num_vars());
    let root = b.import(c);
    let parts = homogenize_in(&mut b, root);
    let engine = builder_engine(&b, &parts);
    (0..parts.len()).rev().find(|&i| !engine.is_zero(i)).and_then(|i| engine.least_monomial(i))
}

/// An engine over homogeneous roots of a builder, using the smallest column
/// sets. Zero roots are allowed.
pub(crate) fn builder_engine(b: &CircuitBuilder, roots: &[GateId]) -> Engine {
    Engine::new(b.field(), b.num_vars(), b.gates(), |g| b.homogeneous_degree(g), roots, ColumnSet::Operands)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{normalize_alternating, parse_circuit};
    use crate::field::FieldSpec;
    use crate::transform::coefficient;

    fn circ(text: &str) -> Circuit {
        parse_circuit(text).unwrap()
    }

    #[test]
    fn syntactic_cancellation_is_zero() {
        let c = circ(
            "field Q\nvars 2\nx = var x1\ny = var x2\nyy = mul y y\np = mul x yy\nm = const -1\nq = mul m p\ns = add p q\noutput s\n",
        );
        assert_eq!(pit(&c), Verdict::Zero);
        assert_eq!(pit_homogeneous(&normalize_alternating(&c)).unwrap(), Verdict::Zero);
    }

    #[test]
    fn bracketings_do_not_cancel() {
        let c = circ(
            "field Q\nvars 2\nx = var x1\ny = var x2\nxy = mul x y\nyx = mul y x\na = mul xy x\nb = mul x yx\ns = add a b\noutput s\n",
        );
        let v = pit_homogeneous(&normalize_alternating(&c)).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.coefficient, FieldSpec::Rationals.one());
        let m = cert.monomial.as_ref().unwrap();
        assert!(m.to_string() == "((x1 x2) x1)" || m.to_string() == "(x1 (x2 x1))");
        assert_eq!(coefficient(&c, m), cert.coefficient);
    }

    #[test]
    fn top_degree_certificate() {
        let c = circ("field Q\nvars 1\nx = var x1\nxx = mul x x\ns = add xx x\noutput s\n");
        assert_eq!(pit(&c).to_string(), "NONZERO (x1 x1) 1");
    }

    #[test]
    fn characteristic_two_cancels() {
        let c = circ("field Fp 2\nvars 1\nx = var x1\nxx = mul x x\nyy = mul x x\ns = add xx yy\noutput s\n");
        assert_eq!(pit(&c), Verdict::Zero);
    }

    #[test]
    fn constants() {
        assert_eq!(pit(&circ("field Q\nvars 1\nc = const 0\noutput c\n")), Verdict::Zero);
        assert_eq!(pit(&circ("field Q\nvars 1\nc = const 3\noutput c\n")).to_string(), "NONZERO 1 3");
    }

    #[test]
    fn preconditions() {
        let c = circ("field Q\nvars 1\nx = var x1\nxx = mul x x\noutput xx\n");
        assert_eq!(pit_homogeneous(&c), Err(PitError::NotNormalized));
        let c = circ("field Q\nvars 1\nx = var x1\nxx = mul x x\ns = add xx x\noutput s\n");
        assert_eq!(pit_homogeneous(&normalize_alternating(&c)), Err(PitError::NotHomogeneous));
    }

    #[test]
    fn bases_respect_the_bound_and_span() {
        // (x1 + x2)·(x1 + x2) + (x1·x1): layer 2 has one sum gate.
        let c = circ(
            "field Q\nvars 2\na = var x1\nb = var x2\ns = add a b\np = mul s s\nq = mul a a\nt = add p q\noutput t\n",
        );
        let n = normalize_alternating(&c);
        let report = pit_homogeneous_report(&n).unwrap();
        assert!(report.within_bound());
        assert_eq!(report.bases[2].len(), 1);
        for text in ["(x1 x1)", "(x1 x2)", "(x2 x1)", "(x2 x2)"] {
            assert!(spanning_check(&n, &report.bases[2], &text.parse().unwrap()));
        }
    }

    #[test]
    fn least_monomial_in_split_order() {
        // 2·(x2 (x1 x1)) + 5·((x2 x1) x1): the left-degree-1 monomial wins.
        let c = circ(
            "field Q\nvars 2\na = var x1\nb = var x2\naa = mul a a\nba = mul b a\np = mul b aa\nq = mul ba a\n\
             two = const 2\nfive = const 5\nsp = mul two p\nsq = mul five q\ns = add sp sq\noutput s\n",
        );
        let (m, k) = least_monomial(&c).unwrap();
        assert_eq!(m.unwrap().to_string(), "(x2 (x1 x1))");
        assert_eq!(k.to_string(), "2");
    }
}
