//! Binary Steinhaus triangles and their weights.
//!
//! A Steinhaus triangle is the sequence of iterated XOR derivatives of a
//! binary seed row. This crate constructs triangles, computes their weights
//! by several independent routes (direct brute force, the binomial entry
//! formula via Lucas's theorem, a fast per-period recurrence for
//! canonical-basis seeds, and exact trigonometric closed forms), and
//! explores extreme and balanced triangles by exhaustive search.

pub mod binomial;
pub mod canonical;
pub mod core;
pub mod extremes;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
