//! Exact scalars, Laurent polynomials and linear algebra.

pub mod laurent;
pub mod linalg;
pub mod rational;

use thiserror::Error;

pub use laurent::{laurent_add, laurent_mul, vars, LaurentPoly, Monomial, Vars};
pub use linalg::{nullspace, rank_at_point, rank_over_fraction_field, LinearSystem};
pub use rational::{int, rat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no image for variable `{0}` in the target ring")]
    UnmappedVariable(String),
    #[error("variable `{variable}` occurs with a negative power but its image is not an invertible monomial")]
    NonUnitImageForNegativePower { variable: String },
    #[error("negative power of a non-monomial")]
    NonInvertible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
