//! Exact-arithmetic core: arbitrary-precision rationals and sparse
//! multivariate polynomials over small named variable rings.
//!
//! Every [`Poly`] carries a reference to its [`VarRing`]; binary operations
//! between different rings are rejected. Terms are kept in canonical form:
//! no zero coefficients, coefficients in lowest terms with a positive
//! denominator, and iteration in descending graded reverse lexicographic
//! order with respect to the ring's declared variable order.

mod monomial;
mod parse;
mod poly;
mod ring;

pub use monomial::{Monomial, MAX_VARS};
pub use parse::parse_poly;
pub use poly::{images_from_text, Homogeneity, Poly};
pub(crate) use poly::check_ring;
pub use ring::{RingRef, VarRing};

use num_rational::BigRational;
use thiserror::Error;

/// Exact rational scalar used for every coefficient.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` in ring {ring}")]
    UnknownVariable { name: String, ring: String },
    #[error("division by zero in coefficient literal at byte {pos}")]
    DivisionByZero { pos: usize },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("exponent overflow")]
    ExponentOverflow,
}

#[cfg(test)]
mod tests;
