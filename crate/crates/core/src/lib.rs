//! Identity testing and factorization for polynomials in the free
//! nonassociative, noncommutative ring F{X}, given by arithmetic circuits.

pub mod circuit;
pub mod cli;
pub mod densepoly;
pub mod factor;
pub mod field;
pub mod pit;
pub mod random;
pub mod transform;
