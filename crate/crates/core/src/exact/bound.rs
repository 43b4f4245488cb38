use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{Criterion, Instance, Time};
use crate::timing::{tail_table, PrefixSchedule};

/// Lower bounds for permutation prefixes, with the per-job tails precomputed.
///
/// Only processing times and minimal lags enter the bound. Maximal lags can delay a job but never make anything
/// finish earlier, so dropping them keeps the bound admissible.
#[derive(Debug, Clone)]
pub struct Bounder {
    crit: Criterion,
    tails: Vec<Vec<Time>>,
}

impl Bounder {
    pub fn new(inst: &Instance, crit: Criterion) -> Result<Self, Error> {
        if crit == Criterion::MaxLateness && inst.due.is_none() {
            return Err(Error::MissingDueDates);
        }
        Ok(Bounder { crit, tails: tail_table(inst) })
    }

    /// Earliest conceivable completion of an unscheduled job appended after `ready`.
    fn job_completion_bound(&self, inst: &Instance, ready: &[Time], job: usize) -> Time {
        (0..inst.machines)
            .map(|k| {
                let start = if k == 0 { ready[0].max(inst.release_of(job)) } else { ready[k] };
                start + inst.p(job, k) + self.tails[job][k]
            })
            .max()
            .expect("m >= 1")
    }

    pub fn bound(&self, inst: &Instance, prefix: &PrefixSchedule, remaining: &[usize]) -> Time {
        let m = inst.machines;
        let ready = prefix.machine_ready(m);
        let job_bounds = remaining.iter().map(|&j| (j, self.job_completion_bound(inst, &ready, j)));
        match self.crit {
            Criterion::Makespan => {
                let placed = prefix.final_completions().map(|(_, c)| c).max().unwrap_or(0);
                let mut best = placed.max(job_bounds.map(|(_, c)| c).max().unwrap_or(0));
                if !remaining.is_empty() {
                    // Machine k still has to process every remaining job, then the last of them needs its tail.
                    for (k, &ready_k) in ready.iter().enumerate() {
                        let load: Time = remaining.iter().map(|&j| inst.p(j, k)).sum();
                        let tail = remaining.iter().map(|&j| self.tails[j][k]).min().expect("nonempty");
                        best = best.max(ready_k + load + tail);
                    }
                }
                best
            }
            Criterion::MaxLateness => {
                let due = inst.due.as_ref().expect("checked in Bounder::new");
                prefix
                    .final_completions()
                    .chain(job_bounds)
                    .map(|(j, c)| c - due[j])
                    .max()
                    .expect("at least one job")
            }
            Criterion::TotalCompletion => {
                prefix.final_completions().map(|(_, c)| c).sum::<Time>() + job_bounds.map(|(_, c)| c).sum::<Time>()
            }
        }
    }
}

/// Admissible lower bound on the objective of every permutation that extends `prefix` with `remaining`.
///
/// For the makespan this is `max_k [CK_k + sum_{i in remaining} p[i][k] + min_{i in remaining} tail(i, k)]`, where
/// `CK_k` is the prefix's completion on machine `k`, strengthened by per-job completion bounds.
pub fn lower_bound(
    inst: &Instance,
    prefix: &PrefixSchedule,
    remaining: &[usize],
    crit: Criterion,
) -> Result<Time, Error> {
    Ok(Bounder::new(inst, crit)?.bound(inst, prefix, remaining))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TimeLag;
    use alloc::vec;

    #[test]
    fn single_job_bound_is_exact() {
        let inst = Instance::new(2, vec![vec![2, 3]], vec![TimeLag::min_only(0, 0, 1, 1)]).unwrap();
        assert_eq!(lower_bound(&inst, &PrefixSchedule::new(), &[0], Criterion::Makespan), Ok(6));
    }

    #[test]
    fn single_machine_sum() {
        let inst = Instance::new(1, vec![vec![3], vec![2]], vec![]).unwrap();
        assert_eq!(lower_bound(&inst, &PrefixSchedule::new(), &[0, 1], Criterion::Makespan), Ok(5));
    }

    #[test]
    fn complete_prefix_bound_is_the_value() {
        let inst = Instance::new(2, vec![vec![3, 1], vec![1, 4]], vec![]).unwrap().with_due(vec![2, 9]).unwrap();
        let mut prefix = PrefixSchedule::new();
        prefix.push(&inst, 1).unwrap();
        prefix.push(&inst, 0).unwrap();
        // Job 1 on [0,1],[1,5]; job 0 on [1,4],[5,6].
        assert_eq!(lower_bound(&inst, &prefix, &[], Criterion::Makespan), Ok(6));
        assert_eq!(lower_bound(&inst, &prefix, &[], Criterion::TotalCompletion), Ok(11));
        assert_eq!(lower_bound(&inst, &prefix, &[], Criterion::MaxLateness), Ok(4));
    }

    #[test]
    fn lateness_bound_needs_due_dates() {
        let inst = Instance::new(1, vec![vec![3]], vec![]).unwrap();
        assert_eq!(
            lower_bound(&inst, &PrefixSchedule::new(), &[0], Criterion::MaxLateness),
            Err(Error::MissingDueDates)
        );
    }
}
