//! Dirichlet characters, character sums and the explicit bound expressions
//! that control them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; IO, configuration and parallel drivers live in
//! the `charsum-lab` crate.
//!
//! Module map:
//!
//! * [`arith`]: factorization, totients, unit groups, prime sieves, continued fractions.
//! * [`characters`]: construction, enumeration and classification of characters.
//! * [`charsums`]: prefix sums, Gauss sums, Fourier expansions, twisted sums.
//! * [`approx`]: Dirichlet rational approximation and the medium-range gates.
//! * [`bounds`]: explicit bound evaluators and ratio scans.
//! * [`multfunc`]: real multiplicative functions, Halász functional, short-sum scans.
//! * [`quad`], [`trig`]: numerical helpers.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::manual_is_multiple_of)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod approx;
pub mod arith;
pub mod bounds;
pub mod characters;
pub mod charsums;
mod error;
pub mod multfunc;
pub mod quad;
pub mod trig;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Crate version, recorded in experiment reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
