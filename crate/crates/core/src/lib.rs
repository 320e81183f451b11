//! Exact verification of Born, Künneth and hypersymplectic structures on
//! finite-dimensional Lie algebras.
//!
//! All scalars are arbitrary-precision rationals; every identity is checked
//! with zero tolerance and failures carry an exact witness.

// Tensor code indexes several arrays by the same basis index.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod connections;
pub mod error;
pub mod exec;
pub mod lie;
pub mod matrix;
pub mod model;
pub mod multilinear;
pub mod random;
pub mod rational;
pub mod report;
pub mod structures;

pub use error::{Error, Result};
pub use rational::Rational;
