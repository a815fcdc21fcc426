//! Separable polynomials over `Z/n`.
//!
//! The crate decides separability of polynomials in `Z/n[x]` by two
//! independent routes (the trace-form discriminant for monic inputs and
//! reduction modulo every prime divisor of `n` followed by a `gcd(f, f')`
//! test over `Z/p`) and counts separable polynomials with exact closed-form
//! formulas. Everything here is pure and allocation-only; IO, threading and
//! the command line live in the `sepcount` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod census;
mod error;
pub mod poly;
pub mod septest;
pub mod space;
mod text;

pub use arith::{Modulus, PrimePower, Residue};
pub use census::{CountMode, CountResult};
pub use error::{Error, Result};
pub use poly::PolyZn;
pub use septest::TraceForm;
pub use text::ParseError;
