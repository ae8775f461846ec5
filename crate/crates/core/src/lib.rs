//! Exact minimality and extremality tests for periodic piecewise linear
//! functions of the one-dimensional infinite group problem.
//!
//! The usual entry points are [`minimality::check_minimality`] and
//! [`extremality::is_extreme`]; [`library`] builds the standard examples.

pub mod complex2d;
pub mod error;
pub mod extremality;
pub mod grid;
pub mod json;
pub mod library;
pub mod linalg;
pub mod minimality;
pub mod pwl;
pub mod scalar;

pub use error::{Error, Result};
pub use pwl::{FiniteGroupFunction, PwlPeriodic, Side};
pub use scalar::{NumberField, Rat, Scalar};
