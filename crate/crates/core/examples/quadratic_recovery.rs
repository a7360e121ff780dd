//! How the constant terms of equal-degree factors come back: derivatives
//! give the factors without constants, and a quadratic pins the constants.

use nonassoc::densepoly::DensePoly;
use nonassoc::factor::{factor_once, ConstantRecovery, FactorOnce};
use nonassoc::field::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let f = DensePoly::parse(q, "1 (x1 x2)\n3 x1\n2 x2\nconst 6\n").unwrap();
    println!("f = (x1 x2) + 3 x1 + 2 x2 + 6");
    let FactorOnce::Split { witness, recovery, .. } = factor_once(&f.to_circuit(2)).unwrap() else {
        unreachable!("f is reducible")
    };
    println!("top monomial {} splits as {} | {}", witness.m, witness.m1, witness.m2);
    match recovery {
        ConstantRecovery::Quadratic { a, b, c, gamma, delta, f0, roots, xi, eta } => {
            println!("a = {a}, b = {b}, c = {c}, gamma = {gamma}, delta = {delta}, f0 = {f0}");
            println!("{c}·ξ² + ({a} - {gamma}·{delta})·ξ + {f0}·{b}·{delta} = 0");
            let roots: Vec<String> = roots.iter().map(ToString::to_string).collect();
            println!("roots [{}]; accepted ξ = {xi}, η = {eta}", roots.join(", "));
        }
        ConstantRecovery::Shift { .. } => unreachable!("equal degrees"),
    }
}
