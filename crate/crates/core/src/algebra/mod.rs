//! Exact arithmetic over ℚ(λ) and the small quadratic extensions needed for
//! pole data.

pub mod factor;
pub mod field;
pub mod linalg;
mod modgcd;
pub mod parse;
pub mod partial;
pub mod poly;
pub mod quad;
pub mod ratfunc;
pub mod series;

use thiserror::Error;

pub use factor::{squarefree_and_roots, Location, PoleDatum, SquarefreeFactor};
pub use field::{q, qi, Field, Q};
pub use parse::{parse_rational_function, ParseError};
pub use partial::{partial_fractions, PartialFractions, PlaceTerms};
pub use poly::{poly_gcd, Poly, Polynomial};
pub use quad::Quadratic;
pub use ratfunc::{RatFunc, RationalFunction};
pub use series::{Laurent, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("operation undefined for the zero function")]
    ZeroInput,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
}
