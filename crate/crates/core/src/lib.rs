//! Certified trigonometric approximation in exact rational arithmetic.
//!
//! Everything in this crate computes with exact rationals; there is no
//! floating point anywhere. `sin_point`/`cos_point` evaluate sine and cosine
//! at rational points with a guaranteed absolute error below `1/10^r`, and
//! the piecewise builders produce polynomial approximants of sin/cos on an
//! interval with the same certified accuracy. Argument reduction subtracts
//! integer multiples of a controlled-precision rational approximation of
//! π/2 whose digit count is refined until an exact margin test certifies
//! that the reduction integer is unaffected by the approximation error.

pub mod error;
pub mod exact;
pub mod oracle;
pub mod pi;
pub mod piecewise;
pub mod pointwise;
pub mod schemes;
pub mod taylor;

pub use error::{Error, Result};
pub use exact::{BigInt, Rational};
