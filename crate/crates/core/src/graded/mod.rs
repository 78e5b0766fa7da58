//! Exact graded linear algebra: scalars, graded spaces and complexes, Koszul
//! signs and signed cyclic words.
//!
//! Grading is cohomological and `V[k]` has `(V[k])^i = V^(i+k)`.

mod cyclic;
mod matrix;
mod scalar;
mod sign;
mod space;

pub use cyclic::{Letter, Normalized, SignedCyclicWord};
pub use matrix::Matrix;
pub use scalar::{format_rational, parse_rational, rational_to_f64, Cx, Regime, Scalar};
pub use sign::{koszul_sign, parity_sign, rotation_sign};
pub use space::{swap_matrix, GradedVectorSpace, HomComplex, ShiftedElement};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("differential in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch { degree: i32, expected: (usize, usize), found: (usize, usize) },
    #[error("d∘d ≠ 0 starting in degree {degree}")]
    DifferentialNotSquareZero { degree: i32 },
}
