//! Dummy-machine embeddings.
//!
//! Release dates become minimal lags from a zero-length operation on a new first machine; tails become minimal lags
//! to a zero-length operation on a new last machine. With tails `q_i = D - d_i`, minimizing the makespan of the
//! embedded instance minimizes the maximum lateness of the original, shifted by `D`.

use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{Instance, MaxLag, Schedule, Time, TimeLag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmbedKind {
    /// Dummy machine prepended at index 0.
    ReleaseEmbed,
    /// Dummy machine appended at index `m`.
    TailEmbed,
}

/// An instance with one extra (dummy) machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedInstance {
    pub inst: Instance,
    pub kind: EmbedKind,
    /// Constant to subtract from the embedded makespan (`D` for `L_max`, otherwise 0).
    pub offset: Time,
}

/// Moves release dates onto a dummy first machine.
pub fn embed_release_dates(inst: &Instance) -> Result<TransformedInstance, Error> {
    let release = inst.release.as_ref().ok_or(Error::MissingReleaseDates)?;
    let processing = inst
        .processing
        .iter()
        .map(|row| core::iter::once(0).chain(row.iter().copied()).collect())
        .collect();
    let mut lags: Vec<TimeLag> =
        release.iter().enumerate().map(|(job, &r)| TimeLag::new(job, 0, 1, r, MaxLag::Unbounded)).collect();
    lags.extend(inst.lags.iter().map(|l| TimeLag { from_op: l.from_op + 1, to_op: l.to_op + 1, ..*l }));
    let embedded = Instance { machines: inst.machines + 1, processing, lags, release: None, due: inst.due.clone() };
    Ok(TransformedInstance { inst: embedded, kind: EmbedKind::ReleaseEmbed, offset: 0 })
}

/// Appends a dummy last machine reached `q[i]` after job `i` completes.
pub fn embed_tails(inst: &Instance, q: &[Time]) -> Result<TransformedInstance, Error> {
    if q.len() != inst.jobs() {
        return Err(Error::LengthMismatch { what: "tails", expected: inst.jobs(), found: q.len() });
    }
    if let Some(job) = q.iter().position(|&t| t < 0) {
        return Err(Error::PreconditionViolated(alloc::format!("tail of job {} is negative", job)));
    }
    let m = inst.machines;
    let processing = inst.processing.iter().map(|row| row.iter().copied().chain(core::iter::once(0)).collect()).collect();
    let mut lags = inst.lags.clone();
    lags.extend(q.iter().enumerate().map(|(job, &t)| TimeLag::new(job, m - 1, m, t, MaxLag::Unbounded)));
    let embedded = Instance {
        machines: m + 1,
        processing,
        lags,
        release: inst.release.clone(),
        due: inst.due.clone(),
    };
    Ok(TransformedInstance { inst: embedded, kind: EmbedKind::TailEmbed, offset: 0 })
}

/// Reduces `L_max` to `C_max` with `D = max_i d_i` and `q_i = D - d_i`.
pub fn lmax_to_cmax(inst: &Instance) -> Result<TransformedInstance, Error> {
    let due = inst.due.as_ref().ok_or(Error::MissingDueDates)?;
    let offset = due.iter().copied().max().expect("instance has at least one job");
    let q: Vec<Time> = due.iter().map(|&d| offset - d).collect();
    let mut t = embed_tails(inst, &q)?;
    t.offset = offset;
    Ok(t)
}

/// Drops the dummy column of a schedule of the embedded instance.
pub fn project_schedule(t: &TransformedInstance, sched: &Schedule) -> Result<Schedule, Error> {
    sched.check_dims(&t.inst)?;
    let start = sched
        .start
        .iter()
        .map(|row| match t.kind {
            EmbedKind::ReleaseEmbed => row[1..].to_vec(),
            EmbedKind::TailEmbed => row[..row.len() - 1].to_vec(),
        })
        .collect();
    Ok(Schedule::new(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{evaluate_criterion, validate_instance, Criterion, MachineOrders};
    use crate::timing::least_schedule;
    use alloc::vec;

    #[test]
    fn release_embed_single_job() {
        let inst = Instance::new(1, vec![vec![2]], vec![]).unwrap().with_release(vec![4]).unwrap();
        let t = embed_release_dates(&inst).unwrap();
        assert_eq!(t.inst.machines, 2);
        assert!(t.inst.release.is_none());
        assert!(validate_instance(&t.inst).is_empty());
        let s = least_schedule(&t.inst, &MachineOrders::from_permutation(&[0], 2)).unwrap();
        assert_eq!(s.start, vec![vec![0, 4]]);
        assert_eq!(evaluate_criterion(&t.inst, &s, Criterion::Makespan), Ok(6));
        assert_eq!(project_schedule(&t, &s).unwrap().start, vec![vec![4]]);
    }

    #[test]
    fn release_embed_shifts_lags() {
        let inst = Instance::new(3, vec![vec![1, 1, 1]], vec![TimeLag::bounded(0, 0, 2, 1, 4)])
            .unwrap()
            .with_release(vec![2])
            .unwrap();
        let t = embed_release_dates(&inst).unwrap();
        assert_eq!(t.inst.lags[0], TimeLag::min_only(0, 0, 1, 2));
        assert_eq!(t.inst.lags[1], TimeLag::bounded(0, 1, 3, 1, 4));
    }

    #[test]
    fn release_embed_requires_release() {
        let inst = Instance::new(1, vec![vec![2]], vec![]).unwrap();
        assert_eq!(embed_release_dates(&inst), Err(Error::MissingReleaseDates));
    }

    #[test]
    fn tail_embed_single_job() {
        let inst = Instance::new(1, vec![vec![3]], vec![]).unwrap();
        let t = embed_tails(&inst, &[6]).unwrap();
        let s = least_schedule(&t.inst, &MachineOrders::from_permutation(&[0], 2)).unwrap();
        assert_eq!(evaluate_criterion(&t.inst, &s, Criterion::Makespan), Ok(9));
        assert_eq!(project_schedule(&t, &s).unwrap().start, vec![vec![0]]);
        assert!(matches!(embed_tails(&inst, &[1, 2]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn lateness_reduction_worked_example() {
        let inst = Instance::new(1, vec![vec![3], vec![2]], vec![]).unwrap().with_due(vec![3, 9]).unwrap();
        let t = lmax_to_cmax(&inst).unwrap();
        assert_eq!(t.offset, 9);
        assert_eq!(t.inst.lags, vec![TimeLag::min_only(0, 0, 1, 6), TimeLag::min_only(1, 0, 1, 0)]);
        let orders = MachineOrders::from_permutation(&[0, 1], 2);
        let s = least_schedule(&t.inst, &orders).unwrap();
        assert_eq!(evaluate_criterion(&t.inst, &s, Criterion::Makespan), Ok(9));
        let original = least_schedule(&inst, &MachineOrders::from_permutation(&[0, 1], 1)).unwrap();
        assert_eq!(evaluate_criterion(&inst, &original, Criterion::MaxLateness), Ok(0));
    }

    #[test]
    fn lateness_reduction_requires_due_dates() {
        let inst = Instance::new(1, vec![vec![3]], vec![]).unwrap();
        assert_eq!(lmax_to_cmax(&inst), Err(Error::MissingDueDates));
    }

    #[test]
    fn projection_checks_dimensions() {
        let inst = Instance::new(1, vec![vec![3]], vec![]).unwrap();
        let t = embed_tails(&inst, &[0]).unwrap();
        assert!(project_schedule(&t, &Schedule::new(vec![vec![0]])).is_err());
    }
}
