use nonassoc::densepoly::{brute_factor, expand, DensePoly, DEFAULT_MAX_TERMS};
use nonassoc::factor::{factor, factor_once, is_irreducible, FactorOnce};
use nonassoc::field::FieldSpec;
use nonassoc::pit::pit;
use nonassoc::random;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense(c: &nonassoc::circuit::Circuit) -> DensePoly {
    expand(c, DEFAULT_MAX_TERMS).unwrap()
}

#[test]
fn verdicts_match_brute_force_over_f3() {
    let f3 = FieldSpec::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut reducible = 0;
    for i in 0..300 {
        // Half products, half random polynomials.
        let p = if i % 2 == 0 {
            let (d1, d2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let g = random::poly(&mut rng, f3, 2, d1, 1);
            g.mul(&random::poly(&mut rng, f3, 2, d2, 1))
        } else {
            let d = rng.gen_range(1..=4);
            random::poly(&mut rng, f3, 2, d, 2)
        };
        let Ok(brute) = brute_factor(&p, 2, 1 << 22) else { continue };
        let c = p.to_circuit(2);
        assert_eq!(is_irreducible(&c).unwrap(), brute.is_irreducible(), "{p}");
        if let FactorOnce::Split { left, right, witness, .. } = factor_once(&c).unwrap() {
            reducible += 1;
            let (l, r) = (dense(&left), dense(&right));
            assert_eq!(l.mul(&r), p);
            assert_eq!((l.degree(), r.degree()), (Some(witness.d1), Some(witness.d2)));
        }
    }
    assert!(reducible > 50);
}

#[test]
fn full_factorizations_multiply_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for field in [FieldSpec::Rationals, FieldSpec::prime(7).unwrap()] {
        for _ in 0..40 {
            let k = rng.gen_range(1..=4);
            let parts: Vec<_> = (0..k)
                .map(|_| {
                    let d = rng.gen_range(1..=3);
                    let constant = rng.gen_bool(0.5);
                    random::irreducible_poly(&mut rng, field, 3, d, 1, constant).to_circuit(3)
                })
                .collect();
            let f = random::product_circuit(&parts);
            let fz = factor(&f).unwrap();
            assert_eq!(fz.factors.len(), k);
            assert!(pit(&fz.product(field, 3).minus(&f)).is_zero());
            for g in &fz.factors {
                assert!(is_irreducible(g).unwrap());
            }
        }
    }
}

#[test]
fn repeated_factor_orders_are_fixed() {
    // (x + 1)(x + 2) = (x + 2)(x + 1) in F{X}; the output picks one order.
    let q = FieldSpec::Rationals;
    let a = DensePoly::parse(q, "1 x1\nconst 1\n").unwrap();
    let b = DensePoly::parse(q, "1 x1\nconst 2\n").unwrap();
    let one = factor(&a.to_circuit(1).times(&b.to_circuit(1))).unwrap();
    let two = factor(&b.to_circuit(1).times(&a.to_circuit(1))).unwrap();
    let show =
        |fz: &nonassoc::factor::Factorization| fz.factors.iter().map(|f| dense(f).to_string()).collect::<Vec<_>>();
    assert_eq!(show(&one), show(&two));
}
