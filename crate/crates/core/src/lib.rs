//! Simulator for deterministic programmable quantum networks with pure
//! states.
//!
//! The crate builds the gates and control Hamiltonians of a three-bus
//! Control-Shift processor, executes programs on it, realizes the same
//! processor as a cylindrical quantum cellular automaton, and checks the
//! structural identities those constructions rely on numerically.
//!
//! Index convention everywhere: big-endian, the leftmost tensor factor is
//! the most significant digit.

pub mod error;
pub mod files;
pub mod gates;
pub mod linalg;
pub mod par;
pub mod processor;
pub mod qca;
pub mod random;
pub mod theorems;
pub mod verify;

pub use error::{Error, Result};
