//! Minimum mean-weight and minimum max-weight cycles in complete graphs
//! whose edge weights are i.i.d. exponential with mean one.
//!
//! The crate is split into four layers:
//!
//! - [`instances`]: random complete graphs, cycles and lightness predicates.
//! - [`solvers`]: exact minimum mean cycle algorithms (Karp, Howard policy
//!   iteration, exhaustive enumeration, pruned Karp, budgeted light-path
//!   search), the min max-weight threshold process and light-cycle censuses.
//! - [`analytic`]: the tree function, limiting CDFs and length distributions,
//!   tail asymptotics and the supercritical bounds.
//! - [`experiments`]: the Monte Carlo harness that compares simulations with
//!   the analytic limits and writes CSV/JSON reports.
//!
//! Throughout, `c` denotes a *scaled* weight: a cycle is `c`-light when its
//! mean weight is at most `c / n`. All logarithms are natural.

// `!(x >= 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod experiments;
pub mod instances;
pub mod par;
pub mod rng;
pub mod solvers;

pub use error::{Error, Result};
pub use instances::{Cycle, GraphInstance, Orientation};
pub use solvers::{SolveResult, SolverKind};
