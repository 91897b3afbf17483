//! Exact sparse multivariate polynomial arithmetic over the rationals.
//!
//! [`MultiPoly`] lives in the ambient variables `a1..an` (`n <= 7`) and is
//! kept in canonical graded-lex order. Variable indices in the public API
//! are 1-based, matching the names `a1..an`. [`IntPoly`] shares the
//! representation with integer coefficients and is used where denominators
//! have been cleared (determinant kernels).

mod coeff;
mod expvec;
mod poly;
mod rational;
mod text;
mod univariate;

use thiserror::Error;

pub use coeff::Coeff;
pub use expvec::{ExpVec, MAX_VARS};
pub use poly::{Poly, Qhw};
pub use rational::{monomial, rational_sqrt};
pub use text::{format_rational, parse_rational};
pub use univariate::{UniPoly, UniVar};

/// Exact rational scalar; always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational-coefficient multivariate polynomial.
pub type MultiPoly = Poly<Rational>;

/// Integer-coefficient multivariate polynomial.
pub type IntPoly = Poly<num_bigint::BigInt>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: {0} vs {1} ambient variables")]
    DimensionMismatch(usize, usize),
    #[error("variable index {index} out of range 1..={nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("{0} variables requested, at most {MAX_VARS} supported")]
    TooManyVariables(usize),
    #[error("coefficient involves the distinguished variable a{0}")]
    ContainsVariable(usize),
    #[error("univariate polynomials use different variables")]
    VariableMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
