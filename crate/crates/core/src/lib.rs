//! Maximal representation fields of orders in prime-degree subfields of
//! central simple algebras over Q.
//!
//! The crate decides whether an order H in a maximal subfield L of degree p
//! is selective, i.e. whether F_M(A|H) = L (a proportion 1/p of spinor
//! genera represent H) or F_M(A|H) = Q. Around that decision sit the
//! supporting pieces: Hilbert symbols and quaternion ramification, prime
//! splitting and Galois automorphisms of L, and exact lattice arithmetic for
//! orders.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cli;
pub mod error;
pub mod field;
pub mod hilbert;
pub mod lattice;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod selectivity;

pub use error::{Error, Result};
