//! Monomials as bracketed words, and the encoded associative circuit.

use nonassoc::circuit::Monomial;
use nonassoc::densepoly::{expand, DensePoly, DEFAULT_MAX_TERMS};
use nonassoc::field::FieldSpec;
use nonassoc::transform::{decode_word, encode_brackets, encode_monomial};

fn main() {
    for text in ["((x1 x1) x1)", "(x1 (x1 x1))", "((x1 x2) (x2 x1))"] {
        let m: Monomial = text.parse().unwrap();
        let w = encode_monomial(&m);
        assert_eq!(decode_word(&w).unwrap(), m);
        println!("{m:>20}  ->  {w}  ({} letters)", w.len());
    }

    // The encoded circuit is read associatively; x3 and x4 are the brackets.
    let f = DensePoly::parse(FieldSpec::Rationals, "1 (x1 x2)\n1 ((x2 x1) x1)\n1 x1\nconst 2\n").unwrap();
    let encoded = encode_brackets(&f.to_circuit(2));
    println!("encoded circuit over {} variables:", encoded.num_vars());
    for (term, c) in expand(&encoded, DEFAULT_MAX_TERMS).unwrap().terms() {
        let word = match term.monomial() {
            Some(m) => m.to_string().replace(['(', ')'], "").replace("x3", "(").replace("x4", ")"),
            None => "1".into(),
        };
        println!("  {c} · {word}");
    }
}
