//! Exact arithmetic kernel: Gaussian rationals, multivariate polynomials,
//! rational functions, fraction-field linear algebra, and a Buchberger-based
//! Groebner engine with ideal-membership and unit-ideal tests.

pub mod gaussian;
pub mod gcd;
pub mod groebner;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod scalar;

pub use gaussian::GaussianRational;
pub use groebner::{GroebnerBudget, GroebnerResult, GroebnerStatus, PolyIdeal, QueryAnswer};
pub use matrix::{Elimination, ScalarMatrix};
pub use poly::{MonomialOrder, MultiPoly};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("division by the zero scalar")]
    DivisionByZero,
    #[error("exceptional value: denominator {denominator} vanishes")]
    ExceptionalValue { denominator: String },
    #[error("parameter {name} is not bound")]
    UnboundParameter { name: String },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
