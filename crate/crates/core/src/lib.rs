//! Numerical laboratory for Hardy–Lorentz spaces, mixed-norm spaces and
//! coefficient multipliers between them.

// `!(x > 0.0)` style guards are deliberate: they reject NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod error;
pub mod family;
pub mod mixed;
pub mod multiplier;
pub mod seq;
pub mod series;
pub mod special;
pub mod suite;
pub mod sum;

pub use error::{Error, Result};
pub use series::CoefficientSeries;
