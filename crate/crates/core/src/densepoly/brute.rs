//! Exhaustive factoring over small prime fields.

use std::collections::{BTreeSet, HashSet};

use super::{DenseError, DensePoly, Term};
use crate::circuit::Monomial;
use crate::field::{FieldSpec, Scalar};

/// Every monomial of degree `k` in variables `x1..xn`, in ascending order.
pub fn all_monomials(n: usize, k: usize) -> Vec<Monomial> {
    if k == 0 {
        return Vec::new();
    }
    if k == 1 {
        return (1..=n).map(Monomial::var).collect();
    }
    let mut out = Vec::new();
    for a in 1..k {
        let left = all_monomials(n, a);
        let right = all_monomials(n, k - a);
        for l in &left {
            for r in &right {
                out.push(Monomial::product(l.clone(), r.clone()));
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteFactor {
    Irreducible,
    /// Every pair `(g, h)` with `g·h = p` and both factors nonconstant, with
    /// the least top-degree monomial of `g` scaled to coefficient 1.
    Factors(Vec<(DensePoly, DensePoly)>),
}

impl BruteFactor {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, BruteFactor::Irreducible)
    }
}

fn elements(field: FieldSpec) -> Result<Vec<Scalar>, DenseError> {
    Ok(field.elements().ok_or(DenseError::InfiniteField)?.collect())
}

/// All coefficient assignments of `len` slots, as digit vectors in base `q`.
fn assignments(q: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (q as u128).pow(len as u32);
    (0..total).map(move |mut i| {
        (0..len)
            .map(|_| {
                let d = (i % q as u128) as usize;
                i /= q as u128;
                d
            })
            .collect()
    })
}

fn combine(field: FieldSpec, elems: &[Scalar], monos: &[Monomial], digits: &[usize]) -> DensePoly {
    DensePoly::from_terms(field, monos.iter().zip(digits).map(|(m, &d)| (Term::Monomial(m.clone()), elems[d].clone())))
}

fn power(q: usize, e: usize) -> u128 {
    (q as u128).saturating_pow(e as u32)
}

/// All factorizations of `p` into two nonconstant factors, found by
/// enumeration.
///
/// The top split of `p` fixes the factor degrees `d1 + d2`. Taking
/// `d1 ≥ d2` (the other case is mirrored), the top part of `g` is supported
/// on left halves of top monomials of `p`; `g` is normalized so its least
/// top monomial `μ` has coefficient 1. Then `h` minus its constant is read
/// off `p` as the right halves of monomials `(μ ν)`, since no other product
/// term can reach those degrees. The lower part of `g` and both constants
/// are enumerated over every monomial in `x1..x_num_vars`, and each
/// candidate product is compared with `p`.
pub fn brute_factor(p: &DensePoly, num_vars: usize, budget: u128) -> Result<BruteFactor, DenseError> {
    assert!(!p.is_zero(), "the zero polynomial has no finite factorization set");
    let field = p.field();
    let elems = elements(field)?;
    let d = p.degree().unwrap();
    if d <= 1 {
        return Ok(BruteFactor::Irreducible);
    }
    let top = p.homogeneous_part(d);
    let splits: BTreeSet<usize> =
        top.terms().filter_map(|(t, _)| t.monomial()).map(|m| m.top_split().unwrap().0.degree()).collect();
    if splits.len() > 1 {
        return Ok(BruteFactor::Irreducible);
    }
    let d1 = *splits.first().unwrap();
    if d1 < d - d1 {
        return Ok(match brute_factor(&p.mirror(), num_vars, budget)? {
            BruteFactor::Irreducible => BruteFactor::Irreducible,
            BruteFactor::Factors(pairs) => {
                BruteFactor::Factors(pairs.into_iter().map(|(g, h)| (h.mirror(), g.mirror())).collect())
            }
        });
    }

    let q = elems.len();
    let lefts: Vec<Monomial> = top
        .terms()
        .filter_map(|(t, _)| t.monomial())
        .map(|m| m.top_split().unwrap().0.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let lower: Vec<Monomial> = (1..d1).flat_map(|k| all_monomials(num_vars, k)).collect();
    let needed = power(q, lefts.len() + lower.len() + 2);
    if needed > budget {
        return Err(DenseError::BudgetExceeded { needed, budget });
    }

    let mut found = Vec::new();
    for top_digits in assignments(q, lefts.len()) {
        // Normalized: the first nonzero top coefficient is 1 (digit 1 is the element 1).
        let Some(lead) = top_digits.iter().position(|&x| x != 0) else { continue };
        if top_digits[lead] != 1 {
            continue;
        }
        let g_top = combine(field, &elems, &lefts, &top_digits);
        let mu = &lefts[lead];
        let h_var = DensePoly::from_terms(
            field,
            p.terms().filter_map(|(t, c)| match t {
                Term::Monomial(Monomial::Node(l, r)) if **l == *mu => Some((Term::Monomial((**r).clone()), c.clone())),
                _ => None,
            }),
        );
        if h_var.degree() != Some(d - d1) {
            continue;
        }
        for low_digits in assignments(q, lower.len()) {
            let g_var = g_top.add(&combine(field, &elems, &lower, &low_digits));
            for alpha in &elems {
                let g = g_var.add(&DensePoly::constant(field, alpha.clone()));
                for beta in &elems {
                    let h = h_var.add(&DensePoly::constant(field, beta.clone()));
                    if g.mul(&h) == *p {
                        found.push((g.clone(), h));
                    }
                }
            }
        }
    }
    Ok(if found.is_empty() { BruteFactor::Irreducible } else { BruteFactor::Factors(found) })
}

/// Nonconstant polynomials of degree exactly `k` in `x1..xn`; with
/// `normalized`, only those whose least top monomial has coefficient 1.
fn polys_of_degree(field: FieldSpec, elems: &[Scalar], n: usize, k: usize, normalized: bool) -> Vec<DensePoly> {
    let tops = all_monomials(n, k);
    let lower: Vec<Monomial> = (1..k).flat_map(|j| all_monomials(n, j)).collect();
    let q = elems.len();
    let mut out = Vec::new();
    for top_digits in assignments(q, tops.len()) {
        let Some(lead) = top_digits.iter().position(|&x| x != 0) else { continue };
        if normalized && top_digits[lead] != 1 {
            continue;
        }
        let top = combine(field, elems, &tops, &top_digits);
        for low_digits in assignments(q, lower.len()) {
            let body = top.add(&combine(field, elems, &lower, &low_digits));
            for c in elems {
                out.push(body.add(&DensePoly::constant(field, c.clone())));
            }
        }
    }
    out
}

/// Every product of two nonconstant polynomials in `x1..xn` with total
/// degree at most `max_degree`: exactly the reducible polynomials of that
/// size. This is the enumeration [`brute_factor`] performs, done once for a
/// whole corpus instead of once per polynomial.
pub fn reducible_products(
    field: FieldSpec,
    num_vars: usize,
    max_degree: usize,
    budget: u128,
) -> Result<HashSet<DensePoly>, DenseError> {
    let elems = elements(field)?;
    let q = elems.len();
    let count = |k: usize| -> u128 {
        let monos: usize = (1..=k).map(|j| all_monomials(num_vars, j).len()).sum();
        power(q, monos + 1)
    };
    let needed: u128 = (1..max_degree)
        .flat_map(|a| (1..=max_degree - a).map(move |b| (a, b)))
        .map(|(a, b)| count(a).saturating_mul(count(b)))
        .fold(0u128, u128::saturating_add);
    if needed > budget {
        return Err(DenseError::BudgetExceeded { needed, budget });
    }
    let normalized: Vec<Vec<DensePoly>> = (0..max_degree)
        .map(|k| if k == 0 { Vec::new() } else { polys_of_degree(field, &elems, num_vars, k, true) })
        .collect();
    let all: Vec<Vec<DensePoly>> = (0..max_degree)
        .map(|k| if k == 0 { Vec::new() } else { polys_of_degree(field, &elems, num_vars, k, false) })
        .collect();
    let mut out = HashSet::new();
    for a in 1..max_degree {
        for b in 1..=max_degree - a {
            for g in &normalized[a] {
                for h in &all[b] {
                    out.insert(g.mul(h));
                }
            }
        }
    }
    Ok(out)
}
