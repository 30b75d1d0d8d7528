//! Independent reference implementations used to check the scorer.
//!
//! Nothing here shares code with [`crate::metrics`] or
//! [`crate::assignment::km_assign`]: the standard metrics are direct
//! transliterations of their textbook definitions over plain mention sets,
//! and assignment is solved by exhaustive search.

mod brute;
mod generate;
mod standard;

pub use brute::{brute_force_assignment, MAX_BRUTE_FORCE};
pub use generate::{generate_instance, RandomInstanceSpec};
pub use standard::{standard_metric, OracleScore};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("reference metrics only accept documents without accommodated sets (entity {0})")]
    HasSets(String),
    #[error("brute-force assignment supports at most {max} items on the smaller side, got {got}")]
    TooLarge { max: usize, got: usize },
}
