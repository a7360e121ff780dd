use nonassoc::circuit::normalize_alternating;
use nonassoc::densepoly::{all_monomials, expand, DenseError};
use nonassoc::field::FieldSpec;
use nonassoc::pit::{least_monomial, pit, pit_homogeneous_report, pit_report, spanning_check};
use nonassoc::random;
use nonassoc::transform::{coefficient, homogenize};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> [FieldSpec; 3] {
    [FieldSpec::Rationals, FieldSpec::prime(2).unwrap(), FieldSpec::prime(5).unwrap()]
}

#[test]
fn verdicts_and_certificates_match_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for field in fields() {
        let mut checked = 0;
        while checked < 150 {
            let n = rng.gen_range(1..=4);
            let size = rng.gen_range(8..=30);
            let c = if rng.gen_bool(0.3) {
                random::zero_circuit(&mut rng, field, n, 6, size / 2)
            } else {
                random::circuit(&mut rng, field, n, 6, size)
            };
            let dense = match expand(&c, 2000) {
                Ok(p) => p,
                Err(DenseError::TermBudgetExceeded { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            checked += 1;
            let report = pit_report(&c);
            assert!(report.within_bound());
            assert_eq!(report.verdict.is_zero(), dense.is_zero(), "{c}");
            if let Some(cert) = report.verdict.certificate() {
                assert_eq!(Some(cert.degree), dense.degree());
                match &cert.monomial {
                    Some(m) => {
                        assert_eq!(dense.coefficient(m), cert.coefficient);
                        assert_eq!(coefficient(&c, m), cert.coefficient);
                    }
                    None => assert_eq!(dense.constant_term(), cert.coefficient),
                }
            }
        }
    }
}

#[test]
fn least_monomial_is_least_in_split_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let key = |m: &nonassoc::circuit::Monomial| -> Vec<usize> {
        // Split order as a sortable key: preorder of (left degree, var index).
        fn walk(m: &nonassoc::circuit::Monomial, out: &mut Vec<usize>) {
            match m {
                nonassoc::circuit::Monomial::Var(v) => {
                    out.push(0);
                    out.push(v.index());
                }
                nonassoc::circuit::Monomial::Node(l, r) => {
                    out.push(l.degree());
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(m, &mut out);
        out
    };
    for field in fields() {
        let mut checked = 0;
        while checked < 60 {
            let c = random::circuit(&mut rng, field, 3, 5, 18);
            let Ok(dense) = expand(&c, 2000) else { continue };
            checked += 1;
            let got = least_monomial(&c);
            let Some(d) = dense.degree() else {
                assert!(got.is_none());
                continue;
            };
            let top = dense.homogeneous_part(d);
            let want = top
                .terms()
                .filter_map(|(t, s)| t.monomial().map(|m| (m.clone(), s.clone())))
                .min_by_key(|(m, _)| key(m));
            match (got, want) {
                (Some((Some(m), s)), Some(w)) => assert_eq!((m, s), w),
                (Some((None, s)), None) => assert_eq!(s, top.constant_term()),
                other => panic!("{other:?}"),
            }
        }
    }
}

#[test]
fn bases_span_every_monomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f5 = FieldSpec::prime(5).unwrap();
    for _ in 0..10 {
        let c = random::circuit(&mut rng, f5, 2, 4, 14);
        let parts = homogenize(&c);
        for part in parts.parts.iter().flatten() {
            let n = normalize_alternating(part);
            let report = pit_homogeneous_report(&n).unwrap();
            assert!(report.within_bound());
            for basis in report.bases.iter().skip(1) {
                for m in all_monomials(2, basis.degree).iter().take(40) {
                    assert!(spanning_check(&n, basis, m));
                }
            }
        }
    }
}

#[test]
fn pit_agrees_with_homogeneous_runs() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for field in fields() {
        for _ in 0..30 {
            let c = random::circuit(&mut rng, field, 3, 5, 20);
            let parts = homogenize(&c);
            let all_zero = parts
                .parts
                .iter()
                .flatten()
                .all(|p| pit_homogeneous_report(&normalize_alternating(p)).unwrap().verdict.is_zero());
            assert_eq!(all_zero, pit(&c).is_zero());
        }
    }
}
