//! Exact dense linear algebra over the rationals.
//!
//! Nothing in here touches floating point. Matrices hold [`BigRational`]
//! entries kept in lowest terms, and the characteristic polynomial is
//! recovered from fraction-free determinants of `tI - M` at integer points.

mod charpoly;
mod elimination;
mod matrix;
mod poly;
mod structure;

pub use charpoly::{charpoly, charpoly_faddeev_leverrier, charpoly_rational, leverrier_integer, CROSS_CHECK_MAX_ORDER};
pub use elimination::{determinant, integer_determinant, inverse, rank};
pub use matrix::ExactMatrix;
pub use poly::{Coefficient, IntPolynomial, Polynomial, RatPolynomial};
pub use structure::{
    block_inverse_check, complement, equitable_quotient, inertia, inertia_from_charpoly, schur_complement,
    InertiaTriple,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("matrix is singular")]
    Singular,
    #[error("principal block is singular")]
    SingularBlock,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has non-integer entries")]
    NotIntegral,
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("index set is empty or covers the whole matrix")]
    EmptyComplement,
    #[error("blocks do not partition the index set: {0}")]
    NotAPartition(String),
    #[error("partition is not equitable: block ({row_block}, {col_block}) has non-constant row sums")]
    NotEquitable { row_block: usize, col_block: usize },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial division is not exact")]
    InexactDivision,
}

pub type Result<T, E = LinalgError> = std::result::Result<T, E>;
