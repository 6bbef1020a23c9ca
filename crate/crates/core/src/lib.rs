//! Exact-arithmetic core for point counting on cubic fourfolds and their
//! K3 categories over finite fields.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; there is no floating point anywhere. Verdicts produced by the
//! condition suites in [`filter`] are bit-reproducible across runs and
//! worker counts.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the parallel
//! counting driver live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod category;
pub mod counts;
pub mod cubic;
pub mod cyclotomic;
pub mod field;
pub mod filter;
pub mod irred;
pub mod newton;
pub mod poly;
pub mod polygon;
pub mod rational;
pub mod sturm;
pub mod weil;

pub use counts::{NcK3Counts, PointCountTable};

pub use poly::RatPoly;
pub use rational::Rat;
