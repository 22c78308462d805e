//! Scoring of alternatives from incomplete paired-comparison profiles.
//!
//! When judges report only some pairwise outcomes, a plain tally ignores who
//! the outcomes were earned against. This crate implements the classical
//! indirect procedures that fold opponent strength back into the scores
//! (row sums, eigenvector win/loss scores and their combinations, attenuated
//! path counts, fair bets, least squares, the generalized row sum, and the
//! Zermelo/Bradley-Terry, Daniels, and Cowden implicit systems), together
//! with an executable self-consistent monotonicity audit that certifies or
//! refutes each of them on concrete profiles.

// index loops mirror the matrix notation throughout the numeric code
#![allow(clippy::needless_range_loop)]

pub mod axioms;
mod error;
pub mod fixtures;
pub mod numerics;
pub mod oracles;
pub mod procedures;
pub mod profile;

pub use error::{Error, Result};
