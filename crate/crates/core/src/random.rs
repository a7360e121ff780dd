//! Random circuits and polynomials for tests, examples and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Circuit, CircuitBuilder, Gate, GateId, Monomial};
use crate::densepoly::{all_monomials, DensePoly, Term};
use crate::field::{FieldSpec, Scalar};

/// A uniformly random element; over ℚ a small integer.
pub fn scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-4..=4)),
        FieldSpec::PrimeField(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random monomial of degree `k` in `x1..xn` with a uniformly random shape.
pub fn monomial<R: Rng>(rng: &mut R, n: usize, k: usize) -> Monomial {
    if k == 1 {
        return Monomial::var(rng.gen_range(1..=n));
    }
    let a = rng.gen_range(1..k);
    Monomial::product(monomial(rng, n, a), monomial(rng, n, k - a))
}

/// A raw circuit of about `size` gates and degree at most `max_degree`,
/// mixing sums, products and constants. No folding is applied, so the gate
/// structure is exactly as generated.
pub fn circuit<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, max_degree: usize, size: usize) -> Circuit {
    let mut gates: Vec<Gate> = Vec::with_capacity(size);
    let mut degs: Vec<usize> = Vec::with_capacity(size);
    for i in 1..=n {
        gates.push(Gate::Input(crate::circuit::VarId::new(i)));
        degs.push(1);
    }
    gates.push(Gate::Const(nonzero_scalar(rng, field)));
    degs.push(0);
    while gates.len() < size.max(n + 2) {
        let len = gates.len();
        // Bias towards recent gates so outputs are deep.
        let pick = |rng: &mut R| {
            if rng.gen_bool(0.6) {
                rng.gen_range(len.saturating_sub(6)..len)
            } else {
                rng.gen_range(0..len)
            }
        };
        match rng.gen_range(0..10) {
            0..=3 => {
                let (l, r) = (pick(rng), pick(rng));
                if degs[l] + degs[r] <= max_degree {
                    gates.push(Gate::Mul(l, r));
                    degs.push(degs[l] + degs[r]);
                }
            }
            4..=8 => {
                let k = rng.gen_range(2..=3);
                let kids: Vec<GateId> = (0..k).map(|_| pick(rng)).collect();
                degs.push(kids.iter().map(|&c| degs[c]).max().unwrap());
                gates.push(Gate::Add(kids));
            }
            _ => {
                gates.push(Gate::Const(scalar(rng, field)));
                degs.push(0);
            }
        }
    }
    let out = gates.len() - 1;
    Circuit::new(field, n, gates, out).expect("generated circuit is valid").annotate_degrees()
}

/// A raw circuit computing zero: `c − c'` where `c'` recomputes `c` with
/// sums reordered and some products distributed over their left sum.
pub fn zero_circuit<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, max_degree: usize, size: usize) -> Circuit {
    let c = circuit(rng, field, n, max_degree, size);
    let mut gates = c.gates().to_vec();
    let base = gates.len();
    let mut copy: Vec<GateId> = Vec::with_capacity(base);
    for gate in c.gates() {
        let id = match gate {
            Gate::Input(_) | Gate::Const(_) => {
                gates.push(gate.clone());
                gates.len() - 1
            }
            Gate::Add(kids) => {
                let mut kids: Vec<GateId> = kids.iter().map(|&k| copy[k]).collect();
                kids.shuffle(rng);
                gates.push(Gate::Add(kids));
                gates.len() - 1
            }
            Gate::Mul(l, r) => {
                let (l, r) = (copy[*l], copy[*r]);
                match gates[l].clone() {
                    Gate::Add(terms) if rng.gen_bool(0.5) => {
                        let prods: Vec<GateId> = terms
                            .iter()
                            .map(|&t| {
                                gates.push(Gate::Mul(t, r));
                                gates.len() - 1
                            })
                            .collect();
                        gates.push(Gate::Add(prods));
                    }
                    _ => gates.push(Gate::Mul(l, r)),
                }
                gates.len() - 1
            }
        };
        copy.push(id);
    }
    gates.push(Gate::Const(-field.one()));
    let minus = gates.len() - 1;
    gates.push(Gate::Mul(minus, copy[c.output()]));
    gates.push(Gate::Add(vec![c.output(), gates.len() - 1]));
    let out = gates.len() - 1;
    Circuit::new(field, n, gates, out).expect("generated circuit is valid").annotate_degrees()
}

/// A random polynomial of exact degree `d` with up to `terms` terms per
/// degree below the top, an optional constant term, and a top part that
/// cannot be a product: for `d ≥ 3` it uses two different top
/// splits, for `d = 2` it has rank 2 as a coefficient matrix.
pub fn irreducible_poly<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    n: usize,
    d: usize,
    terms: usize,
    constant: bool,
) -> DensePoly {
    assert!(d >= 1);
    let mut p = DensePoly::zero(field);
    let add = |p: &mut DensePoly, m: Monomial, rng: &mut R| {
        *p = p.add(&DensePoly::monomial(field, m, nonzero_scalar(rng, field)));
    };
    if d == 1 {
        let v = rng.gen_range(1..=n);
        add(&mut p, Monomial::var(v), rng);
        if n > 1 && rng.gen_bool(0.5) {
            add(&mut p, Monomial::var(v % n + 1), rng);
        }
    } else if d == 2 {
        // Two top terms (x_i x_j), (x_k x_l) with i ≠ k and j ≠ l: the top
        // coefficient matrix has rank 2, and a product of linear factors
        // would give rank 1.
        assert!(n >= 2, "degree-2 construction needs two variables");
        let other = |rng: &mut R, v: usize| (v + rng.gen_range(0..n - 1)) % n + 1;
        let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let (k, l) = (other(rng, i), other(rng, j));
        add(&mut p, Monomial::product(Monomial::var(i), Monomial::var(j)), rng);
        add(&mut p, Monomial::product(Monomial::var(k), Monomial::var(l)), rng);
    } else {
        let a = rng.gen_range(1..d);
        let mut b = rng.gen_range(1..d);
        while b == a {
            b = rng.gen_range(1..d);
        }
        for split in [a, b] {
            let m = Monomial::product(monomial(rng, n, split), monomial(rng, n, d - split));
            add(&mut p, m, rng);
        }
    }
    for k in 1..d {
        for _ in 0..rng.gen_range(0..=terms) {
            add(&mut p, monomial(rng, n, k), rng);
        }
    }
    if constant {
        let c = nonzero_scalar(rng, field);
        p = p.add(&DensePoly::constant(field, c));
    }
    p
}

/// A random polynomial of exact degree `d`, reducible or not.
pub fn poly<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, d: usize, terms: usize) -> DensePoly {
    let mut p = DensePoly::zero(field);
    while p.degree() != Some(d) {
        p = DensePoly::zero(field);
        for k in 1..=d {
            let pool = if k <= 3 { all_monomials(n, k) } else { (0..8).map(|_| monomial(rng, n, k)).collect() };
            for _ in 0..rng.gen_range(0..=terms) {
                let m = pool.choose(rng).unwrap().clone();
                p = p.add(&DensePoly::monomial(field, m, nonzero_scalar(rng, field)));
            }
        }
    }
    let c = scalar(rng, field);
    p.add(&DensePoly::from_terms(field, [(Term::Constant, c)]))
}

/// A homogeneous circuit of degree exactly `d`: gates of degree `j` are
/// sums of products of lower-degree gates. About `size` gates in total.
pub fn layered_circuit<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, d: usize, size: usize) -> Circuit {
    assert!(d >= 1);
    let mut b = CircuitBuilder::new(field, n);
    let mut layers: Vec<Vec<GateId>> = vec![Vec::new(); d + 1];
    for i in 1..=n {
        let v = b.var(i);
        layers[1].push(v);
    }
    let per_layer = (size / d).max(2);
    for j in 2..=d {
        for _ in 0..per_layer {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(1..=2) {
                // Mostly near-balanced splits, sometimes a linear factor.
                let a = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..j) };
                let l = *layers[a].choose(rng).unwrap();
                let r = *layers[j - a].choose(rng).unwrap();
                let prod = b.mul(l, r);
                terms.push(b.scale(&nonzero_scalar(rng, field), prod));
            }
            let g = b.add(terms);
            if !b.is_zero(g) {
                layers[j].push(g);
            }
        }
        if layers[j].is_empty() {
            let prod = b.mul(layers[j - 1][0], layers[1][0]);
            layers[j].push(prod);
        }
    }
    let top = layers[d].clone();
    let root = b.add(top);
    b.extract(root)
}

/// The product circuit `((f1 f2) f3)…` of `factors`, built without folding
/// the factors together.
pub fn product_circuit(factors: &[Circuit]) -> Circuit {
    let mut c = factors[0].clone();
    for f in &factors[1..] {
        c = c.times(f);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densepoly::{brute_factor, expand, DEFAULT_MAX_TERMS};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_circuits_expand_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for field in [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()] {
            for _ in 0..20 {
                let c = zero_circuit(&mut rng, field, 3, 5, 15);
                assert!(expand(&c, DEFAULT_MAX_TERMS).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn layered_circuits_are_homogeneous() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = layered_circuit(&mut rng, FieldSpec::prime(5).unwrap(), 3, 6, 40);
        assert_eq!(c.homogeneous_degree(), Some(6));
    }

    #[test]
    fn constructed_factors_are_irreducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f3 = FieldSpec::prime(3).unwrap();
        for d in 1..=3 {
            for _ in 0..10 {
                let constant = rng.gen_bool(0.5);
                let p = irreducible_poly(&mut rng, f3, 2, d, 1, constant);
                assert_eq!(p.degree(), Some(d));
                assert!(brute_factor(&p, 2, 1 << 22).unwrap().is_irreducible(), "{p}");
            }
        }
    }
}
