//! Exact counting identities for fusion systems of ℓ-compact groups and
//! the reflection-group combinatorics behind them.
//!
//! Everything is computed with exact integers. Each module pairs a closed
//! form with an enumeration that can be cross-checked against it.

pub mod arith;
pub mod error;
pub mod monomial;
pub mod owc;
pub mod partition;
pub mod reflection;
pub mod spectrum;
pub mod tables;
pub mod torus;
pub mod weights;

pub use error::{Error, Result};
pub use spectrum::DefectSpectrum;
