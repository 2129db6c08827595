//! Machine teaching for students with hidden hyperparameters.
//!
//! A teacher wants a student to arrive at target weights (or a target
//! policy) but cannot read the student's regularization strength
//! `lambda*`, and the optimal dataset depends on it. The crate provides
//! the pieces that close that gap:
//!
//! - teaching-set constructions whose training fixed point is exactly
//!   the target, for ridge regression and SVM students ([`teaching`],
//!   [`linear`]);
//! - a probe loop that estimates `lambda*` by handing the student
//!   candidate teaching sets and fitting a Gaussian process to the
//!   squared response gaps ([`diagnosis`], [`gp`]);
//! - demonstration teaching of tabular Q-learners in gridworlds, where
//!   probing instead reveals which states the student already knows
//!   ([`gridworld`]).
//!
//! The [`harness`] module runs the benchmark experiments behind the
//! `diagteach` command-line binary.

pub mod error;
pub mod gp;
pub mod gridworld;
pub mod harness;
pub mod linear;
pub mod diagnosis;
pub mod teaching;

pub use error::{Error, Result};
