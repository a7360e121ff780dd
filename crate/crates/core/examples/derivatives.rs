//! Left and right derivatives keep the cofactors of monomials with a given
//! left (right) child.

use nonassoc::circuit::Monomial;
use nonassoc::densepoly::{expand, DensePoly, DEFAULT_MAX_TERMS};
use nonassoc::field::FieldSpec;
use nonassoc::transform::{coefficient, left_derivative, right_derivative};

fn show(p: &DensePoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.to_string().trim_end().replace('\n', ", ")
}

fn main() {
    let f = DensePoly::parse(FieldSpec::Rationals, "3 ((x1 x2) x2)\n2 (x1 (x2 x2))\n5 (x2 x2)\n").expect("dense text");
    let c = f.to_circuit(2);
    for text in ["(x1 x2)", "x1", "x2"] {
        let m: Monomial = text.parse().expect("monomial");
        let left = expand(&left_derivative(&c, &m).expect("degree ok"), DEFAULT_MAX_TERMS).unwrap();
        let right = expand(&right_derivative(&c, &m).expect("degree ok"), DEFAULT_MAX_TERMS).unwrap();
        println!("by {text}:");
        println!("  left  {}", show(&left));
        println!("  right {}", show(&right));
    }
    let m: Monomial = "((x1 x2) x2)".parse().unwrap();
    println!("coefficient of {m}: {}", coefficient(&c, &m));
}
