//! Roots of univariate polynomials over the coefficient field, for solving
//! the scalar equations of constant recovery.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{solve_quadratic, FieldSpec, Scalar};

/// Coefficients in ascending order of degree.
pub(crate) type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").inv().expect("nonzero lead");
    while r.len() >= b.len() {
        let top = r.last().unwrap().clone();
        if !top.is_zero() {
            let q = &top * &lead;
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&q * c);
            }
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn gcd(a: Poly, b: Poly) -> Poly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn eval(p: &Poly, x: &Scalar, field: FieldSpec) -> Scalar {
    p.iter().rev().fold(field.zero(), |acc, c| &(&acc * x) + c)
}

/// Common roots of `polys`, ascending. `None` when every polynomial is zero,
/// so any value is a root.
pub(crate) fn common_roots(field: FieldSpec, polys: &[Poly]) -> Option<Vec<Scalar>> {
    let g = polys.iter().cloned().fold(Vec::new(), gcd);
    if g.is_empty() {
        return None;
    }
    Some(roots(field, &g))
}

/// Distinct roots of a nonzero polynomial, ascending.
pub(crate) fn roots(field: FieldSpec, p: &Poly) -> Vec<Scalar> {
    let p = trim(p.clone());
    assert!(!p.is_empty(), "roots of the zero polynomial");
    let mut out = match p.len() {
        1 => Vec::new(),
        2 | 3 => {
            let z = field.zero();
            let c2 = p.get(2).unwrap_or(&z);
            solve_quadratic(c2, &p[1], &p[0], field).expect("coefficients share the field")
        }
        _ => match field {
            FieldSpec::PrimeField(_) => field.elements().unwrap().filter(|x| eval(&p, x, field).is_zero()).collect(),
            FieldSpec::Rationals => rational_roots(&p),
        },
    };
    out.sort();
    out.dedup();
    out
}

/// Rational roots by the rational root theorem on the integer-scaled
/// polynomial. Candidates whose numerator or denominator bound has no
/// divisor list within reach are skipped.
fn rational_roots(p: &Poly) -> Vec<Scalar> {
    let q = FieldSpec::Rationals;
    let rats: Vec<num_rational::BigRational> = p
        .iter()
        .map(|s| match s {
            Scalar::Rational(r) => r.clone(),
            Scalar::Residue { .. } => unreachable!("rational polynomial"),
        })
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
    let mut out = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(q.zero());
    }
    let (a0, an) = (ints[low].abs().to_biguint().unwrap(), ints.last().unwrap().abs().to_biguint().unwrap());
    let (Some(num), Some(den)) = (divisors(&a0), divisors(&an)) else {
        return out;
    };
    for r in &num {
        for s in &den {
            for sign in [1i64, -1] {
                let x = q.from_ratio(&(BigInt::from(r.clone()) * sign), &BigInt::from(s.clone())).unwrap();
                if eval(p, &x, q).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigUint) -> Option<Vec<BigUint>> {
    const LIMIT: u64 = 1 << 40;
    let n = n.to_u64().filter(|&n| n <= LIMIT)?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigUint::from(i));
            if i * i != n {
                out.push(BigUint::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}
