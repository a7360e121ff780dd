//! Circuit-to-circuit passes: homogeneous parts, bracket encoding, left and
//! right derivatives, coefficient extraction and top-split components.

mod brackets;
mod coefficient;
mod derivative;
mod homogenize;
mod split;

use thiserror::Error;

pub use brackets::{decode_word, encode_brackets, encode_monomial, DecodeError, EncodedWord, Letter};
pub use coefficient::{coefficient, coefficient_by_subtrees, constant_term};
pub use derivative::{left_derivative, right_derivative, Side};
pub use homogenize::{homogenize, HomogeneousParts};
pub use split::top_split_component;

pub(crate) use coefficient::{coefficient_in, subtree_table, SubtreeIndex};
pub(crate) use derivative::positive_derivative_in;
pub(crate) use homogenize::homogenize_in;
pub(crate) use split::top_split_in;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("monomial of degree {monomial} is not smaller than the circuit degree {circuit}")]
    DegreeError { monomial: usize, circuit: usize },
    #[error("circuit carries no degree annotation")]
    NotHomogeneous,
    #[error("circuit is not in alternating normal form")]
    NotNormalized,
    #[error("split ({left}, {right}) does not add up to the circuit degree {degree}")]
    BadSplit { left: usize, right: usize, degree: usize },
}
