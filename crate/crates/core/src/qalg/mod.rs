//! Exact arithmetic substrate: arbitrary-precision rationals, univariate
//! polynomials, truncated Laurent series and dense rational matrices.
//!
//! Everything downstream of this module that claims to be exact really
//! is: no floating point enters any computation built on these types.

mod rat;
mod poly;
mod laurent;
mod matrix;
pub(crate) mod intfact;

pub use laurent::QLaurent;
pub use matrix::QMatrix;
pub use poly::QPoly;
pub use rat::Rat;

use thiserror::Error;

/// Errors raised by the exact series kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QalgError {
    #[error("series has odd valuation {0}; a square root needs an even one")]
    OddValuation(i64),
    #[error("leading coefficient {leading} is not the square of the requested root {root0}")]
    LeadingNotSquare { leading: String, root0: String },
    #[error("series is zero to its precision O(t^{0}); leading behaviour is undetermined")]
    ZeroSeries(i64),
    #[error("coefficient of t^{wanted} requested but series is only known modulo O(t^{prec})")]
    PrecisionTooSmall { wanted: i64, prec: i64 },
}
