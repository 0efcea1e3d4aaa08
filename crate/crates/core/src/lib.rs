//! Flow-generated functions on planar networks and their stable quadratic relations.

#![allow(clippy::type_complexity, clippy::needless_range_loop)]

pub mod basis;
pub mod cli;
pub mod error;
pub mod flows;
pub mod lindstrom;
pub mod network;
pub mod patterns;
pub mod relations;
pub mod schur;
pub mod semiring;
pub mod witness;

pub use error::{Error, Result};
