//! Exact arithmetic dynamics of rational self-maps of `P^1` over `Q`.
//!
//! Maps are pairs of integer binary forms; points are coprime integer pairs.
//! Everything is computed exactly with arbitrary-precision integers.

pub mod arith;
pub mod census;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod forms;
pub mod proj;
pub mod reduction;
pub mod wire;

mod fp;
mod linalg;
mod upoly;

pub use error::{Error, Result};

/// Exact rational numbers.
pub type Rat = num_rational::BigRational;
