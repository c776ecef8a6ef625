//! Exact truncated power series in `z` over polynomials in `t`.

pub mod rational;
pub mod tpoly;
pub mod zseries;

use thiserror::Error;

pub use rational::Rational;
pub use tpoly::TPoly;
pub use zseries::ZSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has no invertible leading coefficient")]
    DivisorNotInvertible,
    #[error("divisor valuation {divisor} exceeds dividend valuation {dividend}")]
    ValuationMismatch { divisor: usize, dividend: usize },
    #[error("constant term must be 1")]
    BadConstantTerm,
    #[error("cannot shift down by {shift}: coefficient {index} is nonzero")]
    NonzeroLowOrder { shift: usize, index: usize },
    #[error("coefficient {index} requested from a series of order {order}")]
    OutOfOrder { index: usize, order: usize },
}
