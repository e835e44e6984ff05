//! Exact search, construction and verification of positive integer solutions
//! of `sigma_k(x_1, ..., x_n) = sigma_n(x_1, ..., x_n)`.
//!
//! Every verdict in this crate is computed in exact arithmetic
//! ([`Natural`] and [`Ratio`]); floating point only appears when rendering
//! limit constants for humans.
//!
//! Module map:
//!
//! - [`arith`]: factorization, divisors, multiplicative partitions, lcm helpers
//! - [`sequences`] and [`limits`]: Sylvester's sequence `u`, the pair-reciprocal
//!   sequence `v`, and their doubly exponential growth constants
//! - [`symfunc`]: elementary symmetric polynomials and reciprocal forms
//! - [`solver`]: complete enumeration with divisor-pair completion
//! - [`constructions`]: closed-form solution families
//! - [`verify`]: inequality ledgers, dominance sweeps, equality cases

pub mod arith;
pub mod constructions;
mod error;
pub mod limits;
mod par;
pub mod sequences;
pub mod solver;
pub mod symfunc;
pub mod verify;

pub use arith::{Natural, Ratio};
pub use error::{Error, Result};
pub use par::Execution;
pub use solver::{count_solutions, enumerate, enumerate_with, SearchConfig, SolutionSet, Stats};
pub use symfunc::SolutionTuple;

/// Crate version; part of the cache key used by the command-line tool.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
