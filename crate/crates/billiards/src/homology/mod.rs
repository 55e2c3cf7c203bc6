//! Finite-field linear algebra, chain complexes, and the bound calculators
//! built on top of them.

mod bounds;
mod complex;
mod matrix;
mod text;

pub use bounds::{
    cubic_bound, cubic_bound_pipeline, diagonal_pair_profile, exact_sequence_bound, kunneth_dims,
    morse_lower_bound, smith_bound, smith_pipeline_bound,
};
pub use complex::{BettiProfile, ChainComplex};
pub use matrix::FFMatrix;
pub use text::{parse_complex, write_complex};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch: Z_{left} vs Z_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("boundary composition nonzero at degree {degree}")]
    InvalidComplex { degree: usize },
    #[error("chain complex parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
