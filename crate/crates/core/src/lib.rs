//! Coverage validation for confidence distributions and confidence boxes.
//!
//! A Singh plot is the empirical CDF of the minimum confidence a structure
//! needs for its one-sided interval to cover the truth, drawn against the
//! unit uniform. A valid structure's curve never falls below the diagonal.
//!
//! - [`special`]: incomplete beta, Student-t CDF, seeded samplers.
//! - [`structures`]: the supported confidence structures.
//! - [`engine`]: Monte Carlo and exact Singh curves, coverage classification.
//! - [`global`]: worst-case curves over a parameter grid.
//! - [`scenario`]: scenario files, presets, CSV and SVG output.

pub mod engine;
mod error;
pub mod global;
pub mod scenario;
pub mod special;
pub mod structures;

pub use error::{Error, Result};
