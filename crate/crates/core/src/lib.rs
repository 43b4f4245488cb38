//! Flowshop scheduling with minimal and maximal time lags between operations of the same job.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the outside world (files, threads, wall
//! clock) lives in the `flowlag` companion crate; this one is pure computation:
//!
//! * [`model`]: instances, schedules, machine orders, criteria and their validation.
//! * [`timing`]: the least feasible schedule for fixed machine orders, as longest paths in a difference-constraint
//!   graph, with positive-cycle certificates for infeasible orders.
//! * [`transforms`]: dummy-machine embeddings of release dates and tails, and the `L_max` to `C_max` reduction.
//! * [`exact`]: branch-and-bound over permutations, brute-force oracles and the non-dominance search.
//! * [`heuristics`]: NEH insertion and Johnson's rule.
//! * [`twomachine`]: optimal machine-2 sequencing for a fixed machine-1 order with minimal lags only.
//! * [`generate`]: seeded random instance generation.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exact;
pub mod generate;
pub mod heuristics;
pub mod model;
pub mod perm;
pub mod timing;
pub mod transforms;
pub mod twomachine;

pub use error::Error;
pub use model::{Criterion, Instance, MachineOrders, MaxLag, Schedule, Time, TimeLag};
