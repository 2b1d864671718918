//! Exact lattice and elliptic-surface toolkit.
//!
//! The crate is organised bottom-up: [`arith`] supplies rationals, polynomials and
//! rational functions; [`lattice`] handles even integral lattices and discriminant
//! forms; [`elliptic`] analyses Weierstrass models over function fields; [`ns`] works
//! with Néron–Severi frames and involutions; [`harness`] runs the scenario registry.

pub mod arith;
pub mod elliptic;
pub mod error;
pub mod harness;
pub mod lattice;
pub mod ns;

pub use error::{Error, Result};
