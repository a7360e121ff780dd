//! The dense reference: exhaustive factoring over F2 compared with the
//! circuit algorithm on every polynomial in two variables of degree ≤ 2.

use nonassoc::densepoly::{all_monomials, brute_factor, DensePoly, Term};
use nonassoc::factor::is_irreducible;
use nonassoc::field::FieldSpec;

fn main() {
    let f2 = FieldSpec::prime(2).unwrap();
    let monos: Vec<_> = (1..=2).flat_map(|k| all_monomials(2, k)).collect();
    let (mut total, mut reducible) = (0, 0);
    for mask in 0u32..1 << (monos.len() + 1) {
        let mut terms: Vec<(Term, _)> = monos
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, m)| (Term::Monomial(m.clone()), f2.one()))
            .collect();
        if mask >> monos.len() & 1 == 1 {
            terms.push((Term::Constant, f2.one()));
        }
        let p = DensePoly::from_terms(f2, terms);
        if p.degree().unwrap_or(0) == 0 {
            continue;
        }
        let brute = brute_factor(&p, 2, 1 << 20).unwrap();
        assert_eq!(brute.is_irreducible(), is_irreducible(&p.to_circuit(2)).unwrap(), "{p}");
        total += 1;
        reducible += usize::from(!brute.is_irreducible());
    }
    println!("{total} polynomials, {reducible} reducible, circuit verdicts agree");
}
