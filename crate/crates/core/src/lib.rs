#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod complex;
pub mod error;
pub mod humbert;
pub mod jacobi;
pub mod measures;
pub mod quadrature;
pub mod special;
pub mod stieltjes;
pub mod verify;

pub use complex::ComplexValue;
pub use error::{Error, Result};
pub use measures::{BetaParams, MeasureSpec};
pub use stieltjes::{GstResult, Method};
pub use verify::VerificationReport;
