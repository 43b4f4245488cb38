use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::brute::{brute_force_general, brute_force_permutation};
use crate::error::Error;
use crate::generate::{generate, GeneratorParams};
use crate::model::{Criterion, Instance, MachineOrders, Time};
use crate::timing::first_infeasible_job;

/// An instance on which the best non-permutation schedule beats every permutation schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapInstance {
    pub instance: Instance,
    /// Zero-based index of the trial that produced it.
    pub trial: u64,
    pub generator_seed: u64,
    pub permutation: (Vec<usize>, Time),
    pub general: (MachineOrders, Time),
}

/// Samples instances until the general optimum (any per-machine orders) is strictly below the permutation optimum.
///
/// Trial seeds are drawn from a stream seeded with `seed`. `gen` must describe two machines, at most four jobs, and
/// no unbounded maximal lags; its own `seed` field is ignored.
pub fn find_nonperm_gap(gen: &GeneratorParams, seed: u64, budget: u64) -> Result<Option<GapInstance>, Error> {
    if gen.machines != 2 || gen.jobs > 4 || gen.unbounded_probability != 0.0 {
        return Err(Error::PreconditionViolated(
            "gap search needs m = 2, n <= 4 and finite maximal lags".into(),
        ));
    }
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let cap = 24 * 24;
    for trial in 0..budget {
        let generator_seed = seeds.next_u64();
        let instance = generate(&GeneratorParams { seed: generator_seed, ..gen.clone() })?;
        if first_infeasible_job(&instance).is_some() {
            continue;
        }
        let permutation = brute_force_permutation(&instance, Criterion::Makespan)?;
        let general = brute_force_general(&instance, Criterion::Makespan, cap)?;
        if general.1 < permutation.1 {
            return Ok(Some(GapInstance { instance, trial, generator_seed, permutation, general }));
        }
    }
    Ok(None)
}
