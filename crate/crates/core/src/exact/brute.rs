use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{evaluate_criterion, Criterion, Instance, MachineOrders, Time};
use crate::perm::{factorial, next_permutation};
use crate::timing::{first_infeasible_job, least_schedule};

/// Largest job count [`brute_force_permutation`] accepts.
pub const DEFAULT_PERMUTATION_CAP: usize = 9;

/// Exhaustive search over all `n!` permutations, each timed on the full constraint graph.
///
/// Returns the lexicographically smallest permutation among the optimal ones.
pub fn brute_force_permutation(inst: &Instance, crit: Criterion) -> Result<(Vec<usize>, Time), Error> {
    brute_force_permutation_capped(inst, crit, DEFAULT_PERMUTATION_CAP)
}

pub fn brute_force_permutation_capped(
    inst: &Instance,
    crit: Criterion,
    max_jobs: usize,
) -> Result<(Vec<usize>, Time), Error> {
    let n = inst.jobs();
    if n > max_jobs {
        return Err(Error::CapExceeded { cap: factorial(max_jobs), required: factorial(n) });
    }
    if let Some((job, witness)) = first_infeasible_job(inst) {
        return Err(Error::Infeasible { job: Some(job), witness });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(Vec<usize>, Time)> = None;
    loop {
        if let Ok(sched) = least_schedule(inst, &MachineOrders::from_permutation(&perm, inst.machines)) {
            let value = evaluate_criterion(inst, &sched, crit)?;
            if best.as_ref().is_none_or(|(_, v)| value < *v) {
                best = Some((perm.clone(), value));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.ok_or(Error::AllInfeasible)
}

/// Exhaustive search over every tuple of per-machine orders, `(n!)^m` of them.
///
/// Tuples whose constraint graph has a positive cycle are skipped. Among optimal tuples the first in
/// lexicographic order (machine 0 most significant) is returned.
pub fn brute_force_general(inst: &Instance, crit: Criterion, cap: u64) -> Result<(MachineOrders, Time), Error> {
    let n = inst.jobs();
    let m = inst.machines;
    let required = (0..m).fold(1u64, |acc, _| acc.saturating_mul(factorial(n)));
    if required > cap {
        return Err(Error::CapExceeded { cap, required });
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        perms.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let mut digits = alloc::vec![0usize; m];
    let mut best: Option<(MachineOrders, Time)> = None;
    'tuples: loop {
        let orders = MachineOrders::new(digits.iter().map(|&d| perms[d].clone()).collect(), n)?;
        if let Ok(sched) = least_schedule(inst, &orders) {
            let value = evaluate_criterion(inst, &sched, crit)?;
            if best.as_ref().is_none_or(|(_, v)| value < *v) {
                best = Some((orders, value));
            }
        }
        // Odometer with the last machine as least significant digit.
        for d in (0..m).rev() {
            digits[d] += 1;
            if digits[d] < perms.len() {
                continue 'tuples;
            }
            digits[d] = 0;
        }
        break;
    }
    best.ok_or(Error::AllInfeasible)
}
