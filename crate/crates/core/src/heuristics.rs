//! Upper-bound constructions.

use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{Criterion, Instance, Time};
use crate::timing::{first_infeasible_job, permutation_value};

/// NEH insertion adapted to time lags.
///
/// Jobs are taken by nonincreasing span (processing plus internal minimal lags, ties by index) and each is inserted
/// at the position of the partial sequence with the best timed objective. Ties go to the leftmost position.
pub fn neh_insertion(inst: &Instance, crit: Criterion) -> Result<(Vec<usize>, Time), Error> {
    if let Some((job, witness)) = first_infeasible_job(inst) {
        return Err(Error::Infeasible { job: Some(job), witness });
    }
    let mut by_span: Vec<usize> = (0..inst.jobs()).collect();
    by_span.sort_by_key(|&j| core::cmp::Reverse(inst.job_span(j)));

    let mut seq: Vec<usize> = Vec::with_capacity(inst.jobs());
    let mut candidate: Vec<usize> = Vec::with_capacity(inst.jobs());
    for &job in &by_span {
        let mut best: Option<(usize, Time)> = None;
        for pos in 0..=seq.len() {
            candidate.clear();
            candidate.extend_from_slice(&seq[..pos]);
            candidate.push(job);
            candidate.extend_from_slice(&seq[pos..]);
            let value = permutation_value(inst, &candidate, crit)?;
            if best.is_none_or(|(_, v)| value < v) {
                best = Some((pos, value));
            }
        }
        let (pos, _) = best.expect("at least one insertion position");
        seq.insert(pos, job);
    }
    let value = permutation_value(inst, &seq, crit)?;
    Ok((seq, value))
}

/// Johnson's rule for two machines without lags: jobs with `p0 < p1` by ascending `p0`, then the others by
/// descending `p1`. Ties keep index order.
pub fn johnson_order(inst: &Instance) -> Result<Vec<usize>, Error> {
    if inst.machines != 2 {
        return Err(Error::PreconditionViolated(alloc::format!(
            "Johnson's rule needs 2 machines, instance has {}",
            inst.machines
        )));
    }
    if !inst.has_trivial_lags() {
        return Err(Error::PreconditionViolated("Johnson's rule needs an instance without time lags".into()));
    }
    let p = &inst.processing;
    let mut first: Vec<usize> = (0..inst.jobs()).filter(|&j| p[j][0] < p[j][1]).collect();
    first.sort_by_key(|&j| p[j][0]);
    let mut second: Vec<usize> = (0..inst.jobs()).filter(|&j| p[j][0] >= p[j][1]).collect();
    second.sort_by_key(|&j| core::cmp::Reverse(p[j][1]));
    first.extend(second);
    Ok(first)
}
