//! Factorization of polynomials in F{X} given by circuits.
//!
//! In F{X} every monomial of a product `g·h` splits at its root into a
//! monomial of `g` and one of `h`, so the degrees of the two factors can be
//! read off any top-degree monomial `m = (m1 m2)` of `f`. Derivatives by
//! `m1` on the left and by `m2` on the right then expose scalar multiples
//! of the factors, up to their constant terms, which are recovered by
//! solving a small scalar equation and confirmed by identity testing.

mod univariate;

use rustc_hash::FxHashMap as HashMap;
use std::fmt;

use thiserror::Error;

use crate::circuit::{live_gates, Circuit, CircuitBuilder, Gate, GateId, Monomial};
use crate::field::{solve_quadratic, FieldError, FieldSpec, Scalar};
use crate::pit::builder_engine;
use crate::transform::{coefficient_in, homogenize_in, positive_derivative_in, top_split_in, Side};
use univariate::{common_roots, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("the input is a constant")]
    ConstantInput,
    #[error("the input is the zero polynomial")]
    ZeroPolynomial,
}

/// The top-degree monomial that fixes the factor degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    pub m: Monomial,
    pub m1: Monomial,
    pub m2: Monomial,
    pub d1: usize,
    pub d2: usize,
    /// Coefficient of `m` in `f`.
    pub cm: Scalar,
}

/// How the constant terms of the factors were found.
///
/// With `G`, `H` the derivative-based multiples of the two factors without
/// constants, the accepted factors are `(G + xi)/delta` and `H + eta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantRecovery {
    /// Equal factor degrees: `xi` is a root of
    /// `c·ξ² + (a − gamma·delta)·ξ + f0·b·delta`, where `a`, `b`, `c` are the
    /// coefficients of `m1` in `G·H`, `G`, `H` and `gamma` is that of `f`.
    Quadratic {
        a: Scalar,
        b: Scalar,
        c: Scalar,
        gamma: Scalar,
        delta: Scalar,
        f0: Scalar,
        /// Candidate `ξ` values, in the order tried.
        roots: Vec<Scalar>,
        xi: Scalar,
        eta: Scalar,
    },
    /// Unequal degrees: the left factor is a polynomial in an unknown shift
    /// `t` (the right constant over the right leading coefficient); `t` is a
    /// common root of the coefficient equations.
    Shift { delta: Scalar, f0: Scalar, roots: Vec<Scalar>, t: Scalar, xi: Scalar, eta: Scalar },
}

impl ConstantRecovery {
    pub fn xi(&self) -> &Scalar {
        match self {
            ConstantRecovery::Quadratic { xi, .. } | ConstantRecovery::Shift { xi, .. } => xi,
        }
    }

    pub fn eta(&self) -> &Scalar {
        match self {
            ConstantRecovery::Quadratic { eta, .. } | ConstantRecovery::Shift { eta, .. } => eta,
        }
    }
}

#[derive(Debug, Clone)]
pub enum FactorOnce {
    Irreducible,
    Split { left: Circuit, right: Circuit, witness: SplitWitness, recovery: ConstantRecovery },
}

/// Bracketing of the factors of a [`Factorization`]; leaves index
/// `factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorShape {
    Factor(usize),
    Product(Box<FactorShape>, Box<FactorShape>),
}

impl fmt::Display for FactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorShape::Factor(i) => write!(f, "f{}", i + 1),
            FactorShape::Product(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl FactorShape {
    /// Builds the bracketed product of `factors` into `b`.
    pub fn product_in(&self, b: &mut CircuitBuilder, factors: &[GateId]) -> GateId {
        match self {
            FactorShape::Factor(i) => factors[*i],
            FactorShape::Product(l, r) => {
                let (l, r) = (l.product_in(b, factors), r.product_in(b, factors));
                b.mul(l, r)
            }
        }
    }
}

/// `f = unit · (product of factors bracketed as shape)`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub unit: Scalar,
    /// Irreducible factors in product order, each scaled so that its least
    /// top-degree monomial has coefficient 1.
    pub factors: Vec<Circuit>,
    pub shape: Option<FactorShape>,
}

impl Factorization {
    /// The circuit `unit · product`, for checking against the input.
    pub fn product(&self, field: FieldSpec, num_vars: usize) -> Circuit {
        let mut b = CircuitBuilder::new(field, num_vars);
        let gates: Vec<GateId> = self.factors.iter().map(|c| b.import(c)).collect();
        let unit = b.constant(self.unit.clone());
        let root = match &self.shape {
            Some(s) => {
                let p = s.product_in(&mut b, &gates);
                b.mul(unit, p)
            }
            None => unit,
        };
        b.extract(root)
    }
}

struct Found {
    left: GateId,
    right: GateId,
    witness: SplitWitness,
    recovery: ConstantRecovery,
}

fn is_zero_in(b: &mut CircuitBuilder, g: GateId) -> bool {
    if b.is_zero(g) {
        return true;
    }
    let parts = homogenize_in(b, g);
    let engine = builder_engine(b, &parts);
    (0..parts.len()).all(|i| engine.is_zero(i))
}

/// Mirror image of the polynomial at `root`: every product's operands swap.
fn mirror_in(b: &mut CircuitBuilder, root: GateId) -> GateId {
    let live = live_gates(b.gates(), &[root]);
    let mut map: HashMap<GateId, GateId> = HashMap::with_capacity_and_hasher(live.len(), Default::default());
    for g in live {
        let new = match b.gate(g).clone() {
            Gate::Input(v) => b.var(v.index()),
            Gate::Const(s) => b.constant(s),
            Gate::Mul(l, r) => b.mul(map[&r], map[&l]),
            Gate::Add(kids) => {
                let kids: Vec<GateId> = kids.iter().map(|k| map[k]).collect();
                b.add(kids)
            }
        };
        map.insert(g, new);
    }
    map[&root]
}

/// Roots of `q[0]·x² + q[1]·x + q[2]`; a nonzero constant has none.
fn quadratic_roots(q: &[Scalar; 3], field: FieldSpec) -> Vec<Scalar> {
    match solve_quadratic(&q[0], &q[1], &q[2], field) {
        Ok(roots) => roots,
        Err(FieldError::DegenerateEquation) => Vec::new(),
        Err(e) => panic!("{e}"),
    }
}

fn plus_constant(b: &mut CircuitBuilder, g: GateId, s: &Scalar) -> GateId {
    let k = b.constant(s.clone());
    b.add([g, k])
}

/// Accepts `left·right` if it equals `f`.
fn verified(b: &mut CircuitBuilder, f: GateId, left: GateId, right: GateId) -> bool {
    let prod = b.mul(left, right);
    let diff = b.sub(prod, f);
    is_zero_in(b, diff)
}

/// One nontrivial split of the polynomial at `f`, or `None` if it is
/// irreducible.
fn split_in(b: &mut CircuitBuilder, f: GateId) -> Result<Option<Found>, FactorError> {
    let field = b.field();
    let parts = homogenize_in(b, f);
    // Split components of the nominal top part ride along in the same
    // engine: a top part with two nonzero components cannot be a product.
    let top = parts.len().saturating_sub(1);
    let comps: Vec<GateId> = if top >= 2 && !b.is_zero(parts[top]) {
        (1..top).map(|k| top_split_in(b, parts[top], k, top - k)).collect()
    } else {
        Vec::new()
    };
    let engine = builder_engine(b, &[parts.as_slice(), comps.as_slice()].concat());
    let d = (0..parts.len()).rev().find(|&j| !engine.is_zero(j)).ok_or(FactorError::ZeroPolynomial)?;
    match d {
        0 => return Err(FactorError::ConstantInput),
        1 => return Ok(None),
        _ => {}
    }
    let (Some(m), delta) = engine.certificate(d).expect("nonzero part") else {
        unreachable!("a positive-degree part has a monomial certificate")
    };
    let (m1, m2) = m.top_split().map(|(l, r)| (l.clone(), r.clone())).expect("degree ≥ 2");
    let (d1, d2) = (m1.degree(), m2.degree());
    let f0 = b.const_value(parts[0]).cloned().unwrap_or_else(|| field.zero());
    let f = b.add(parts[..=d].to_vec());
    let witness = SplitWitness { m: m.clone(), m1: m1.clone(), m2: m2.clone(), d1, d2, cm: delta.clone() };

    // Every top monomial of a product shares one split.
    let mixed = if d == top && !comps.is_empty() {
        (0..comps.len()).filter(|&k| !engine.is_zero(parts.len() + k)).count() > 1
    } else {
        let comp = top_split_in(b, parts[d], d1, d2);
        let rest = b.sub(parts[d], comp);
        !is_zero_in(b, rest)
    };
    if mixed {
        return Ok(None);
    }

    if d1 < d2 {
        let mirrored = mirror_in(b, f);
        return Ok(split_in(b, mirrored)?.map(|found| {
            let left = mirror_in(b, found.right);
            let right = mirror_in(b, found.left);
            Found { left, right, witness, recovery: found.recovery }
        }));
    }
    let recovered = if d1 == d2 {
        split_equal(b, f, &m1, &m2, &delta, &f0)
    } else {
        split_unequal(b, f, &m1, &m2, d1, d2, &delta, &f0)
    };
    Ok(recovered.map(|(left, right, recovery)| Found { left, right, witness, recovery }))
}

/// Equal degrees. With `f = (g + α)(h + β)`:
/// `H = ∂ˡ_{m1} f − c_{m1}(f) = c_{m1}(g)·h` and symmetrically `G = c_{m2}(h)·g`,
/// so `(G + ξ)(H + η) = δ·f` for `ξ = c_{m2}(h)·α`, `η = c_{m1}(g)·β`. The
/// coefficients of `m1` and `m2` and the constant term give the quadratics.
fn split_equal(
    b: &mut CircuitBuilder,
    f: GateId,
    m1: &Monomial,
    m2: &Monomial,
    delta: &Scalar,
    f0: &Scalar,
) -> Option<(GateId, GateId, ConstantRecovery)> {
    let field = b.field();
    let (h, _) = positive_derivative_in(b, f, m1, Side::Left);
    let (g, _) = positive_derivative_in(b, f, m2, Side::Right);
    let gh = b.mul(g, h);
    let coef = |b: &CircuitBuilder, root: GateId, m: &Monomial| coefficient_in(b.gates(), field, root, m);
    let (a, bb, c, gamma) = (coef(b, gh, m1), coef(b, g, m1), coef(b, h, m1), coef(b, f, m1));
    let (a2, b2, c2, gamma2) = (coef(b, gh, m2), coef(b, g, m2), coef(b, h, m2), coef(b, f, m2));

    // δγ = a + η·b + ξ·c and its mirror δγ' = a' + η·b' + ξ·c', with ξη = δ·f0.
    let eta_from = |xi: &Scalar| &(&(&(delta * &gamma) - &a) - &(xi * &c)) / &bb;
    let xi_from = |eta: &Scalar| &(&(&(delta * &gamma2) - &a2) - &(eta * &b2)) / &c2;
    let quad = [c.clone(), &a - &(&gamma * delta), &(f0 * &bb) * delta];
    let mirror_quad = [b2.clone(), &a2 - &(&gamma2 * delta), &(f0 * &c2) * delta];

    let mut roots: Vec<Scalar> = Vec::new();
    let mut candidates: Vec<(Scalar, Scalar)> = Vec::new();
    if quad.iter().any(|s| !s.is_zero()) {
        for xi in quadratic_roots(&quad, field) {
            candidates.push((xi.clone(), eta_from(&xi)));
            roots.push(xi);
        }
    } else {
        let eta = eta_from(&field.zero());
        candidates.push((xi_from(&eta), eta));
    }
    if mirror_quad.iter().any(|s| !s.is_zero()) {
        for eta in quadratic_roots(&mirror_quad, field) {
            candidates.push((xi_from(&eta), eta));
        }
    } else {
        let xi = xi_from(&field.zero());
        candidates.push((xi.clone(), eta_from(&xi)));
    }

    let inv = delta.inv().expect("nonzero certificate");
    let mut seen: Vec<(Scalar, Scalar)> = Vec::new();
    for (xi, eta) in candidates {
        if seen.contains(&(xi.clone(), eta.clone())) || &xi * &eta != f0 * delta {
            continue;
        }
        seen.push((xi.clone(), eta.clone()));
        let left_raw = plus_constant(b, g, &xi);
        let left = b.scale(&inv, left_raw);
        let right = plus_constant(b, h, &eta);
        if verified(b, f, left, right) {
            let recovery = ConstantRecovery::Quadratic {
                a,
                b: bb,
                c,
                gamma,
                delta: delta.clone(),
                f0: f0.clone(),
                roots,
                xi,
                eta,
            };
            return Some((left, right, recovery));
        }
    }
    None
}

/// Left degree larger. With `f = (g + α)(h + β)` and `D = ∂ʳ_{m2} − c_{m2}`:
/// `H = ∂ˡ_{m1} f − c_{m1}(f) = c_{m1}(g)·h` exactly, while
/// `Φ = D f = c_{m2}(h)·g + β·D g` carries a cross term. Applying `D`
/// repeatedly and telescoping gives `c_{m2}(h)·g = Σ_k (−t)^k·D^k Φ` with
/// `t = β / c_{m2}(h)`. The unknowns `t` and `ξ = c_{m2}(h)·α` then satisfy
/// `(G(t) + ξ)(H + δt) = δ·f`, a polynomial identity in `t` whose
/// coefficients are circuits; `t` is a common root of their coefficients on
/// a few certificate monomials.
#[allow(clippy::too_many_arguments)]
fn split_unequal(
    b: &mut CircuitBuilder,
    f: GateId,
    m1: &Monomial,
    m2: &Monomial,
    d1: usize,
    d2: usize,
    delta: &Scalar,
    f0: &Scalar,
) -> Option<(GateId, GateId, ConstantRecovery)> {
    let field = b.field();
    let (h, _) = positive_derivative_in(b, f, m1, Side::Left);
    // G_k = (−1)^k·D^k Φ, so that G(t) = Σ_k G_k·t^k.
    let mut gs: Vec<GateId> = Vec::new();
    let mut phi = f;
    for k in 0..=(d1 - 1) / d2 {
        phi = positive_derivative_in(b, phi, m2, Side::Right).0;
        let sign = if k % 2 == 0 { field.one() } else { -field.one() };
        gs.push(b.scale(&sign, phi));
    }
    let df = b.scale(delta, f);
    let g_at = |j: usize| gs.get(j).copied();

    // Candidate (t, ξ) pairs and the polynomial each family of t satisfies.
    let mut candidates: Vec<(Scalar, Scalar)> = Vec::new();
    let mut all_roots: Vec<Scalar> = Vec::new();
    if !f0.is_zero() {
        // ξ = f0/t; multiply through by t: t·δf = (t·G(t) + f0)(H + δt).
        let mut eqs = Vec::new();
        let fh = b.scale(f0, h);
        eqs.push(b.neg(fh));
        let g0h = b.mul(gs[0], h);
        let k = b.constant(f0 * delta);
        let sub = b.add([g0h, k]);
        eqs.push(b.sub(df, sub));
        for j in 2..=gs.len() + 1 {
            let mut terms = Vec::new();
            if let Some(gj) = g_at(j - 1) {
                terms.push(b.mul(gj, h));
            }
            if let Some(gj) = g_at(j - 2) {
                terms.push(b.scale(delta, gj));
            }
            let s = b.add(terms);
            eqs.push(b.neg(s));
        }
        for t in shift_roots(b, &eqs) {
            if !t.is_zero() {
                candidates.push((t.clone(), f0 / &t));
                all_roots.push(t);
            }
        }
    } else {
        // t = 0: G = G_0 and ξ·H = δf − G_0·H; read ξ off m2, where H has
        // coefficient c_{m1}(g)·c_{m2}(h) = δ.
        let g0h = b.mul(gs[0], h);
        let rem = b.sub(df, g0h);
        let xi = &coefficient_in(b.gates(), field, rem, m2) / delta;
        candidates.push((field.zero(), xi));
        all_roots.push(field.zero());
        // ξ = 0: δf = G(t)(H + δt).
        let mut eqs = vec![b.sub(df, g0h)];
        for j in 1..=gs.len() {
            let mut terms = Vec::new();
            if let Some(gj) = g_at(j) {
                terms.push(b.mul(gj, h));
            }
            terms.push(b.scale(delta, gs[j - 1]));
            let s = b.add(terms);
            eqs.push(b.neg(s));
        }
        for t in shift_roots(b, &eqs) {
            candidates.push((t.clone(), field.zero()));
            all_roots.push(t);
        }
    }

    let inv = delta.inv().expect("nonzero certificate");
    let mut seen: Vec<(Scalar, Scalar)> = Vec::new();
    for (t, xi) in candidates {
        if seen.contains(&(t.clone(), xi.clone())) {
            continue;
        }
        seen.push((t.clone(), xi.clone()));
        let mut terms = Vec::with_capacity(gs.len() + 1);
        let mut power = field.one();
        for &gk in &gs {
            terms.push(b.scale(&power, gk));
            power = &power * &t;
        }
        terms.push(b.constant(xi.clone()));
        let left_raw = b.add(terms);
        let left = b.scale(&inv, left_raw);
        let eta = &t * delta;
        let right = plus_constant(b, h, &eta);
        if verified(b, f, left, right) {
            let recovery =
                ConstantRecovery::Shift { delta: delta.clone(), f0: f0.clone(), roots: all_roots, t, xi, eta };
            return Some((left, right, recovery));
        }
    }
    None
}

/// Values of `t` for which `Σ_k eqs[k]·t^k` may vanish: common roots of its
/// coefficients on one certificate monomial per nonzero homogeneous part of
/// each `eqs[k]`.
fn shift_roots(b: &mut CircuitBuilder, eqs: &[GateId]) -> Vec<Scalar> {
    let field = b.field();
    let mut roots: Vec<GateId> = Vec::new();
    let mut index: Vec<Vec<Option<usize>>> = Vec::with_capacity(eqs.len());
    for &e in eqs {
        let parts = homogenize_in(b, e);
        index.push(
            parts
                .iter()
                .map(|&p| {
                    roots.push(p);
                    Some(roots.len() - 1)
                })
                .collect(),
        );
    }
    let engine = builder_engine(b, &roots);
    let coefficient_at = |k: usize, m: &Option<Monomial>| -> Scalar {
        let j = m.as_ref().map_or(0, Monomial::degree);
        match index[k].get(j).copied().flatten() {
            None => field.zero(),
            Some(i) => match m {
                Some(m) => engine.coefficient(i, m),
                None => engine.certificate(i).map_or_else(|| field.zero(), |(_, s)| s),
            },
        }
    };
    let mut polys: Vec<Poly> = Vec::new();
    for i in 0..roots.len() {
        if let Some((m, _)) = engine.certificate(i) {
            polys.push((0..eqs.len()).map(|k| coefficient_at(k, &m)).collect());
        }
    }
    common_roots(field, &polys).expect("the identity has a nonzero coefficient")
}

/// One nontrivial factorization `f = left·right`, or `Irreducible`.
pub fn factor_once(c: &Circuit) -> Result<FactorOnce, FactorError> {
    let mut b = CircuitBuilder::new(c.field(), c.num_vars());
    let root = b.import(c);
    Ok(match split_in(&mut b, root)? {
        None => FactorOnce::Irreducible,
        Some(found) => FactorOnce::Split {
            left: b.extract(found.left),
            right: b.extract(found.right),
            witness: found.witness,
            recovery: found.recovery,
        },
    })
}

pub fn is_irreducible(c: &Circuit) -> Result<bool, FactorError> {
    Ok(matches!(factor_once(c)?, FactorOnce::Irreducible))
}

enum Tree {
    Leaf(GateId),
    Node(Box<Tree>, Box<Tree>),
}

fn split_all(b: &mut CircuitBuilder, f: GateId) -> Tree {
    match split_in(b, f).expect("factors of a nonconstant polynomial are nonconstant") {
        None => Tree::Leaf(f),
        Some(found) => {
            let l = split_all(b, found.left);
            let r = split_all(b, found.right);
            Tree::Node(Box::new(l), Box::new(r))
        }
    }
}

/// Complete factorization into irreducibles. Factors are built inside one
/// shared circuit, so each is a derivative expression over the input's
/// gates rather than an independent copy.
pub fn factor(c: &Circuit) -> Result<Factorization, FactorError> {
    let field = c.field();
    let mut b = CircuitBuilder::new(field, c.num_vars());
    let root = b.import(c);
    let tree = match split_in(&mut b, root) {
        Err(FactorError::ConstantInput) => {
            let parts = homogenize_in(&mut b, root);
            let unit = b.const_value(parts[0]).cloned().unwrap_or_else(|| field.zero());
            return Ok(Factorization { unit, factors: Vec::new(), shape: None });
        }
        Err(e) => return Err(e),
        Ok(None) => Tree::Leaf(root),
        Ok(Some(found)) => {
            let l = split_all(&mut b, found.left);
            let r = split_all(&mut b, found.right);
            Tree::Node(Box::new(l), Box::new(r))
        }
    };

    let mut leaves = Vec::new();
    fn walk(t: &Tree, leaves: &mut Vec<GateId>) -> FactorShape {
        match t {
            Tree::Leaf(g) => {
                leaves.push(*g);
                FactorShape::Factor(leaves.len() - 1)
            }
            Tree::Node(l, r) => {
                let l = walk(l, leaves);
                let r = walk(r, leaves);
                FactorShape::Product(Box::new(l), Box::new(r))
            }
        }
    }
    let shape = walk(&tree, &mut leaves);

    let mut unit = field.one();
    let mut factors = Vec::with_capacity(leaves.len());
    for g in leaves {
        let parts = homogenize_in(&mut b, g);
        let engine = builder_engine(&b, &parts);
        let top = (0..parts.len()).rev().find(|&j| !engine.is_zero(j)).expect("factor is nonzero");
        let (_, lead) = engine.least_monomial(top).expect("nonzero part");
        let inv = lead.inv().expect("nonzero coefficient");
        unit = &unit * &lead;
        let scaled = b.scale(&inv, g);
        factors.push(b.extract(scaled));
    }
    Ok(Factorization { unit, factors, shape: Some(shape) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;
    use crate::densepoly::{expand, DensePoly, DEFAULT_MAX_TERMS};
    use crate::pit::pit;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn dense(c: &Circuit) -> String {
        expand(c, DEFAULT_MAX_TERMS).unwrap().to_string()
    }

    fn from_dense(field: FieldSpec, text: &str) -> Circuit {
        DensePoly::parse(field, text).unwrap().to_circuit(2)
    }

    fn check_product(c: &Circuit, fz: &Factorization) {
        let diff = fz.product(c.field(), c.num_vars()).minus(c);
        assert!(pit(&diff).is_zero());
    }

    #[test]
    fn bracketing_decides_the_factorization() {
        let c = from_dense(q(), "1 (x1 (x2 x1))\n1 x1\n");
        let fz = factor(&c).unwrap();
        let got: Vec<String> = fz.factors.iter().map(dense).collect();
        assert_eq!(got, ["1 x1\n", "1 (x2 x1)\nconst 1\n"]);
        check_product(&c, &fz);

        let c = from_dense(q(), "1 ((x1 x2) x1)\n1 x1\n");
        let fz = factor(&c).unwrap();
        let got: Vec<String> = fz.factors.iter().map(dense).collect();
        assert_eq!(got, ["1 (x1 x2)\nconst 1\n", "1 x1\n"]);
        assert_eq!(fz.unit, q().one());
    }

    #[test]
    fn quadratic_recovers_constants() {
        let c = parse_circuit(
            "field Q\nvars 2\nx = var x1\ny = var x2\na = const 2\nb = const 3\ns = add x a\nt = add y b\np = mul s t\noutput p\n",
        )
        .unwrap();
        let FactorOnce::Split { left, right, recovery, .. } = factor_once(&c).unwrap() else { panic!() };
        assert_eq!(dense(&left), "1 x1\nconst 2\n");
        assert_eq!(dense(&right), "1 x2\nconst 3\n");
        assert_eq!(recovery.xi(), &q().from_i64(2));
    }

    #[test]
    fn unequal_degrees_with_cross_term() {
        // (x1 x2 + x1 + 1)·(x2 + 2): β·D g is nonzero here.
        let g = DensePoly::parse(q(), "1 (x1 x2)\n1 x1\nconst 1\n").unwrap();
        let h = DensePoly::parse(q(), "1 x2\nconst 2\n").unwrap();
        let c = g.mul(&h).to_circuit(2);
        let FactorOnce::Split { left, right, .. } = factor_once(&c).unwrap() else { panic!() };
        assert_eq!(expand(&left, DEFAULT_MAX_TERMS).unwrap(), g);
        assert_eq!(expand(&right, DEFAULT_MAX_TERMS).unwrap(), h);
        // And mirrored.
        let c = h.mul(&g).to_circuit(2);
        let FactorOnce::Split { left, right, .. } = factor_once(&c).unwrap() else { panic!() };
        assert_eq!(expand(&left, DEFAULT_MAX_TERMS).unwrap(), h);
        assert_eq!(expand(&right, DEFAULT_MAX_TERMS).unwrap(), g);
    }

    #[test]
    fn zero_constant_subcases() {
        for (g, h) in [
            ("1 (x1 x2)\n1 x1\n", "1 x2\nconst 2\n"),
            ("1 (x1 x2)\n1 x1\nconst 1\n", "1 x2\n"),
            ("1 (x1 x2)\n1 x2\n", "1 x1\n"),
            ("1 x1\n", "1 x2\nconst 5\n"),
            ("1 x1\nconst 5\n", "1 x2\n"),
        ] {
            let (g, h) = (DensePoly::parse(q(), g).unwrap(), DensePoly::parse(q(), h).unwrap());
            let c = g.mul(&h).to_circuit(2);
            let FactorOnce::Split { left, right, .. } = factor_once(&c).unwrap() else { panic!("{g} {h}") };
            let (l, r) = (expand(&left, DEFAULT_MAX_TERMS).unwrap(), expand(&right, DEFAULT_MAX_TERMS).unwrap());
            assert_eq!(l.mul(&r), g.mul(&h));
        }
    }

    #[test]
    fn irreducible_and_errors() {
        assert!(is_irreducible(&from_dense(q(), "1 x1\n")).unwrap());
        assert!(!is_irreducible(&from_dense(q(), "1 (x1 x2)\n")).unwrap());
        assert!(is_irreducible(&from_dense(q(), "1 (x1 x2)\nconst 1\n")).unwrap());
        assert_eq!(factor_once(&from_dense(q(), "const 3\n")).unwrap_err(), FactorError::ConstantInput);
        assert_eq!(factor_once(&from_dense(q(), "")).unwrap_err(), FactorError::ZeroPolynomial);
        let fz = factor(&from_dense(q(), "const 5\n")).unwrap();
        assert_eq!(fz.unit, q().from_i64(5));
        assert!(fz.factors.is_empty());
    }

    #[test]
    fn three_factors() {
        // (x+1)·((y+2)·(x+3))
        let p = |s: &str| DensePoly::parse(q(), s).unwrap();
        let f = p("1 x1\nconst 1\n").mul(&p("1 x2\nconst 2\n").mul(&p("1 x1\nconst 3\n")));
        let c = f.to_circuit(2);
        let fz = factor(&c).unwrap();
        assert_eq!(fz.factors.len(), 3);
        assert_eq!(fz.shape.as_ref().unwrap().to_string(), "(f1 (f2 f3))");
        check_product(&c, &fz);
    }
}
