//! Factoring a product circuit into irreducibles.

use nonassoc::densepoly::{expand, DensePoly, DEFAULT_MAX_TERMS};
use nonassoc::factor::factor;
use nonassoc::field::FieldSpec;
use nonassoc::pit::pit;

fn main() {
    let q = FieldSpec::Rationals;
    let poly = |s: &str| DensePoly::parse(q, s).expect("dense text");
    let g = poly("1 x1\nconst 1\n");
    let h = poly("2 (x2 x1)\n1 x2\nconst -3\n");
    let k = poly("1 x1\nconst 3\n");

    // g·(h·k), as a circuit that never expands the product.
    let f = g.to_circuit(2).times(&h.to_circuit(2).times(&k.to_circuit(2)));
    let fz = factor(&f).expect("nonzero input");

    println!("unit {}", fz.unit);
    println!("shape {}", fz.shape.as_ref().expect("nonconstant"));
    for (i, factor) in fz.factors.iter().enumerate() {
        let dense = expand(factor, DEFAULT_MAX_TERMS).expect("small factor");
        println!("f{} = {}", i + 1, dense.to_string().trim_end().replace('\n', " + "));
    }
    let check = fz.product(q, 2).minus(&f);
    println!("unit·product - f: {}", pit(&check));
}
