//! Two machines, minimal lags only, machine-1 sequence given.
//!
//! Machine 1 runs its sequence as early as possible. Each job then becomes available on machine 2 at
//! `C[i][0] + min_lag_i`, and machine 2 faces a single-machine makespan problem with release dates, solved by
//! processing jobs in order of availability.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{is_permutation_of, Instance, MachineOrders, Schedule, Time};

/// Optimal schedule among all schedules whose machine-1 order is `m1_order`.
pub fn f2_minlag_given_m1(inst: &Instance, m1_order: &[usize]) -> Result<(MachineOrders, Schedule), Error> {
    if inst.machines != 2 {
        return Err(Error::PreconditionViolated(alloc::format!(
            "two-machine solver called on {} machines",
            inst.machines
        )));
    }
    if let Some(lag) = inst.lags.iter().find(|l| !l.max_lag.is_unbounded()) {
        return Err(Error::PreconditionViolated(alloc::format!("job {} has a finite maximal lag", lag.job)));
    }
    let n = inst.jobs();
    if !is_permutation_of(m1_order, n) {
        return Err(Error::InvalidOrders("machine-1 order is not a permutation of the jobs".into()));
    }

    let mut min_lag = vec![0; n];
    for lag in &inst.lags {
        min_lag[lag.job] = lag.min_lag;
    }

    let mut start = vec![vec![0 as Time; 2]; n];
    let mut ready = 0;
    for &job in m1_order {
        let s = ready.max(inst.release_of(job));
        start[job][0] = s;
        ready = s + inst.p(job, 0);
    }
    let available: Vec<Time> = (0..n).map(|j| start[j][0] + inst.p(j, 0) + min_lag[j]).collect();

    // Stable sort keeps machine-1 position as the tie-break.
    let mut m2_order = m1_order.to_vec();
    m2_order.sort_by_key(|&j| available[j]);
    let mut ready = 0;
    for &job in &m2_order {
        let s = ready.max(available[job]);
        start[job][1] = s;
        ready = s + inst.p(job, 1);
    }

    let orders = MachineOrders::new(vec![m1_order.to_vec(), m2_order], n)?;
    Ok((orders, Schedule::new(start)))
}
