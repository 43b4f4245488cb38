//! Exact methods: branch-and-bound over permutations and the brute-force oracles used to check it.

mod bnb;
mod bound;
mod brute;
mod gap;

use alloc::vec::Vec;
use core::time::Duration;

use crate::error::Error;
use crate::model::{Criterion, Time};

pub use bnb::{admits_against, improves, solve_bnb, Budget, Incumbent, LocalIncumbent, SearchControl, SearchProblem, SearchTree};
pub use bound::{lower_bound, Bounder};
pub use brute::{brute_force_general, brute_force_permutation, brute_force_permutation_capped, DEFAULT_PERMUTATION_CAP};
pub use gap::{find_nonperm_gap, GapInstance};

/// Elapsed-time source for time limits. The core has no clock of its own.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances; time limits never trigger.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub criterion: Criterion,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub worker_count: usize,
    pub deterministic: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            criterion: Criterion::Makespan,
            node_limit: None,
            time_limit: None,
            worker_count: 1,
            deterministic: true,
        }
    }
}

impl SearchOptions {
    pub fn validate(&self) -> Result<(), Error> {
        if self.worker_count == 0 {
            return Err(Error::PreconditionViolated("worker count must be at least 1".into()));
        }
        if self.deterministic && self.worker_count != 1 {
            return Err(Error::PreconditionViolated("deterministic search requires a single worker".into()));
        }
        Ok(())
    }
}

/// Outcome of [`solve_bnb`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnBResult {
    pub best_perm: Vec<usize>,
    pub value: Time,
    /// The search finished without hitting a node or time limit.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub root_lower_bound: Time,
    pub elapsed: Duration,
}
