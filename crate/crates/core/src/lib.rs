//! Marked linear Hawkes processes.
//!
//! The intensity of the process is `lambda_t = nu + sum_{tau_i < t} h(t - tau_i, a_i)`
//! with i.i.d. marks `a_i`. This crate provides
//!
//! - exact simulation by thinning and by the cluster construction ([`simulate`]),
//! - the law of large numbers and central limit theorem constants ([`asymptotics`]),
//! - the limiting cumulant generating function and its critical point ([`cgf`]),
//! - the large deviation rate function with independent oracles ([`ldp`]),
//! - a risk model with Hawkes claim arrivals: Lundberg exponent, finite-horizon
//!   decay rate, Monte Carlo ruin, heavy-tail asymptotics ([`risk`]),
//! - a configuration-file driven batch front end ([`cli`]).

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cgf;
pub mod cli;
pub mod error;
pub mod ldp;
pub mod model;
pub mod quad;
pub mod risk;
pub mod simulate;
pub mod stats;

pub use cgf::{Extended, Impact};
pub use error::{HawkesError, Result};
pub use model::{ClaimLaw, HawkesModel, KernelSpec, MarkLaw, ValidationReport};
pub use simulate::{EventStream, RngSpec, Sampler};
