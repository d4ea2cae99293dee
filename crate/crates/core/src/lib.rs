//! Exact reduction analysis of rational self-maps of the projective line
//! over Q: simple, critical and separable good reduction at each prime,
//! plus orbit and bound computations.

pub mod analysis;
pub mod arith;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod proj;

pub use error::{Error, Result};
