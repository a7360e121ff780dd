//! Splitting a circuit into homogeneous parts, each a circuit of its own.

use nonassoc::densepoly::{expand, DEFAULT_MAX_TERMS};
use nonassoc::field::FieldSpec;
use nonassoc::random;
use nonassoc::transform::homogenize;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = random::circuit(&mut rng, FieldSpec::prime(5).unwrap(), 2, 5, 24);
    println!("input: {} gates, degree bound {}", c.size(), c.degree_bound());
    for (j, part) in homogenize(&c).parts.iter().enumerate() {
        let Some(part) = part else { continue };
        let terms = expand(part, DEFAULT_MAX_TERMS).expect("small").len();
        println!("degree {j}: {} gates, {terms} terms", part.simplified().size());
    }
}
