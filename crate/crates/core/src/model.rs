//! Instances, schedules, machine orders and objective criteria.
//!
//! Operation `j` of every job runs on machine `j`. A [`TimeLag`] bounds the delay between the completion of one
//! operation of a job and the start of a later operation of the same job:
//! `min_lag <= S[job][to_op] - C[job][from_op] <= max_lag`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Integral time unit used everywhere.
pub type Time = i64;

/// Upper bound of a time lag. `Unbounded` contributes no constraint at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxLag {
    Finite(Time),
    Unbounded,
}

impl MaxLag {
    pub fn finite(self) -> Option<Time> {
        match self {
            MaxLag::Finite(v) => Some(v),
            MaxLag::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, MaxLag::Unbounded)
    }
}

impl From<Option<Time>> for MaxLag {
    fn from(value: Option<Time>) -> Self {
        value.map_or(MaxLag::Unbounded, MaxLag::Finite)
    }
}

/// A minimal/maximal delay between two operations of one job.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeLag {
    pub job: usize,
    pub from_op: usize,
    pub to_op: usize,
    pub min_lag: Time,
    pub max_lag: MaxLag,
}

impl TimeLag {
    pub fn new(job: usize, from_op: usize, to_op: usize, min_lag: Time, max_lag: MaxLag) -> Self {
        TimeLag { job, from_op, to_op, min_lag, max_lag }
    }

    /// Lag with a lower bound only.
    pub fn min_only(job: usize, from_op: usize, to_op: usize, min_lag: Time) -> Self {
        Self::new(job, from_op, to_op, min_lag, MaxLag::Unbounded)
    }

    pub fn bounded(job: usize, from_op: usize, to_op: usize, min_lag: Time, max_lag: Time) -> Self {
        Self::new(job, from_op, to_op, min_lag, MaxLag::Finite(max_lag))
    }
}

/// A flowshop instance. Rows of `processing` are jobs, columns are machines.
///
/// Fields are public so that malformed instances can be represented and reported by [`validate_instance`]; the
/// solvers assume a valid instance and [`Instance::new`] enforces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub machines: usize,
    pub processing: Vec<Vec<Time>>,
    pub lags: Vec<TimeLag>,
    pub release: Option<Vec<Time>>,
    pub due: Option<Vec<Time>>,
}

impl Instance {
    /// Builds and validates an instance without release or due dates.
    pub fn new(machines: usize, processing: Vec<Vec<Time>>, lags: Vec<TimeLag>) -> Result<Self, Error> {
        Instance { machines, processing, lags, release: None, due: None }.checked()
    }

    pub fn with_release(mut self, release: Vec<Time>) -> Result<Self, Error> {
        self.release = Some(release);
        self.checked()
    }

    pub fn with_due(mut self, due: Vec<Time>) -> Result<Self, Error> {
        self.due = Some(due);
        self.checked()
    }

    /// Returns `self` if it has no defects.
    pub fn checked(self) -> Result<Self, Error> {
        let defects = validate_instance(&self);
        if defects.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidInstance(defects))
        }
    }

    #[inline]
    pub fn jobs(&self) -> usize {
        self.processing.len()
    }

    #[inline]
    pub fn p(&self, job: usize, op: usize) -> Time {
        self.processing[job][op]
    }

    #[inline]
    pub fn release_of(&self, job: usize) -> Time {
        self.release.as_ref().map_or(0, |r| r[job])
    }

    pub fn lags_of(&self, job: usize) -> impl Iterator<Item = &TimeLag> + '_ {
        self.lags.iter().filter(move |l| l.job == job)
    }

    /// Sum of the job's processing times and of its minimal lags.
    pub fn job_span(&self, job: usize) -> Time {
        self.processing[job].iter().sum::<Time>() + self.lags_of(job).map(|l| l.min_lag).sum::<Time>()
    }

    /// True when no lag constrains anything beyond plain precedence.
    pub fn has_trivial_lags(&self) -> bool {
        self.lags.iter().all(|l| l.min_lag == 0 && l.max_lag.is_unbounded())
    }
}

/// One violated instance invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    NoJobs,
    NoMachines,
    ColumnCount { job: usize, found: usize, expected: usize },
    NegativeProcessing { job: usize, op: usize, value: Time },
    LagJob { lag: usize, job: usize },
    LagOperation { lag: usize, op: usize },
    LagOrder { lag: usize, from_op: usize, to_op: usize },
    NegativeMinLag { lag: usize, value: Time },
    NegativeMaxLag { lag: usize, value: Time },
    DuplicateLag { lag: usize, first: usize },
    ReleaseLength { found: usize, expected: usize },
    NegativeRelease { job: usize, value: Time },
    DueLength { found: usize, expected: usize },
    NegativeDue { job: usize, value: Time },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Defect::NoJobs => write!(f, "job count must be positive"),
            Defect::NoMachines => write!(f, "machine count must be positive"),
            Defect::ColumnCount { job, found, expected } => {
                write!(f, "p column count != m: job {} has {} columns, m = {}", job, found, expected)
            }
            Defect::NegativeProcessing { job, op, value } => {
                write!(f, "negative processing time {} at p[{}][{}]", value, job, op)
            }
            Defect::LagJob { lag, job } => write!(f, "lags[{}]: job index {} out of range", lag, job),
            Defect::LagOperation { lag, op } => write!(f, "lags[{}]: operation index {} out of range", lag, op),
            Defect::LagOrder { lag, from_op, to_op } => {
                write!(f, "lags[{}]: from_op < to_op violated ({} -> {})", lag, from_op, to_op)
            }
            Defect::NegativeMinLag { lag, value } => write!(f, "lags[{}]: negative min lag {}", lag, value),
            Defect::NegativeMaxLag { lag, value } => write!(f, "lags[{}]: negative max lag {}", lag, value),
            Defect::DuplicateLag { lag, first } => {
                write!(f, "lags[{}]: duplicates the (job, from_op, to_op) of lags[{}]", lag, first)
            }
            Defect::ReleaseLength { found, expected } => {
                write!(f, "release has length {}, expected {}", found, expected)
            }
            Defect::NegativeRelease { job, value } => write!(f, "release[{}] is negative ({})", job, value),
            Defect::DueLength { found, expected } => write!(f, "due has length {}, expected {}", found, expected),
            Defect::NegativeDue { job, value } => write!(f, "due[{}] is negative ({})", job, value),
        }
    }
}

/// Lists every violated instance invariant; an empty list means the instance is valid.
pub fn validate_instance(inst: &Instance) -> Vec<Defect> {
    let mut defects = Vec::new();
    let n = inst.jobs();
    let m = inst.machines;
    if n == 0 {
        defects.push(Defect::NoJobs);
    }
    if m == 0 {
        defects.push(Defect::NoMachines);
    }
    for (job, row) in inst.processing.iter().enumerate() {
        if row.len() != m {
            defects.push(Defect::ColumnCount { job, found: row.len(), expected: m });
        }
        for (op, &value) in row.iter().enumerate() {
            if value < 0 {
                defects.push(Defect::NegativeProcessing { job, op, value });
            }
        }
    }
    for (idx, lag) in inst.lags.iter().enumerate() {
        if lag.job >= n {
            defects.push(Defect::LagJob { lag: idx, job: lag.job });
        }
        for op in [lag.from_op, lag.to_op] {
            if op >= m {
                defects.push(Defect::LagOperation { lag: idx, op });
            }
        }
        if lag.from_op >= lag.to_op {
            defects.push(Defect::LagOrder { lag: idx, from_op: lag.from_op, to_op: lag.to_op });
        }
        if lag.min_lag < 0 {
            defects.push(Defect::NegativeMinLag { lag: idx, value: lag.min_lag });
        }
        if let MaxLag::Finite(v) = lag.max_lag {
            if v < 0 {
                defects.push(Defect::NegativeMaxLag { lag: idx, value: v });
            }
        }
        if let Some(first) = inst.lags[..idx]
            .iter()
            .position(|o| (o.job, o.from_op, o.to_op) == (lag.job, lag.from_op, lag.to_op))
        {
            defects.push(Defect::DuplicateLag { lag: idx, first });
        }
    }
    if let Some(release) = &inst.release {
        if release.len() != n {
            defects.push(Defect::ReleaseLength { found: release.len(), expected: n });
        }
        for (job, &value) in release.iter().enumerate() {
            if value < 0 {
                defects.push(Defect::NegativeRelease { job, value });
            }
        }
    }
    if let Some(due) = &inst.due {
        if due.len() != n {
            defects.push(Defect::DueLength { found: due.len(), expected: n });
        }
        for (job, &value) in due.iter().enumerate() {
            if value < 0 {
                defects.push(Defect::NegativeDue { job, value });
            }
        }
    }
    defects
}

/// Per-machine job sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineOrders {
    orders: Vec<Vec<usize>>,
}

impl MachineOrders {
    /// Checks that every sequence is a permutation of `0..jobs`.
    pub fn new(orders: Vec<Vec<usize>>, jobs: usize) -> Result<Self, Error> {
        for (machine, order) in orders.iter().enumerate() {
            if !is_permutation_of(order, jobs) {
                return Err(Error::InvalidOrders(alloc::format!(
                    "order of machine {} is not a permutation of 0..{}",
                    machine,
                    jobs
                )));
            }
        }
        Ok(MachineOrders { orders })
    }

    /// Per-machine orders implied by a schedule's start times (ties by job index).
    pub fn from_start_times(sched: &Schedule, machines: usize) -> Self {
        let orders = (0..machines)
            .map(|k| {
                let mut order: Vec<usize> = (0..sched.jobs()).collect();
                order.sort_by_key(|&j| (sched.start[j][k], j));
                order
            })
            .collect();
        MachineOrders { orders }
    }

    /// The same sequence on every machine. The sequence itself is not checked here.
    pub fn from_permutation(perm: &[usize], machines: usize) -> Self {
        MachineOrders { orders: vec![perm.to_vec(); machines] }
    }

    pub fn machines(&self) -> usize {
        self.orders.len()
    }

    pub fn machine(&self, machine: usize) -> &[usize] {
        &self.orders[machine]
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn is_permutation(&self) -> bool {
        self.orders.windows(2).all(|w| w[0] == w[1])
    }

    pub fn as_permutation(&self) -> Option<&[usize]> {
        if self.is_permutation() {
            self.orders.first().map(|o| o.as_slice())
        } else {
            None
        }
    }

    pub fn into_inner(self) -> Vec<Vec<usize>> {
        self.orders
    }
}

pub(crate) fn is_permutation_of(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &j in seq {
        if j >= n || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

/// Start times of every operation, `start[job][op]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    pub start: Vec<Vec<Time>>,
}

impl Schedule {
    pub fn new(start: Vec<Vec<Time>>) -> Self {
        Schedule { start }
    }

    pub fn jobs(&self) -> usize {
        self.start.len()
    }

    pub fn completion(&self, inst: &Instance, job: usize, op: usize) -> Time {
        self.start[job][op] + inst.p(job, op)
    }

    /// Completion time of each job's final operation.
    pub fn job_completions(&self, inst: &Instance) -> Vec<Time> {
        let last = inst.machines - 1;
        (0..self.jobs()).map(|i| self.completion(inst, i, last)).collect()
    }

    pub(crate) fn check_dims(&self, inst: &Instance) -> Result<(), Error> {
        let found = (self.start.len(), self.start.first().map_or(0, |r| r.len()));
        let expected = (inst.jobs(), inst.machines);
        if found.0 != expected.0 || self.start.iter().any(|r| r.len() != expected.1) {
            return Err(Error::DimensionMismatch { expected, found });
        }
        Ok(())
    }
}

/// Regular objective functions: all are nondecreasing in every completion time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// `C_max`
    Makespan,
    /// `L_max = max_i (C_i - d_i)`; needs due dates.
    MaxLateness,
    /// `sum_i C_i`
    TotalCompletion,
}

impl Criterion {
    /// Aggregates `(job, completion of the job's last operation)` pairs.
    ///
    /// Returns `None` for an empty input with `Makespan`/`MaxLateness` (no jobs, no value).
    pub fn aggregate<I>(self, inst: &Instance, completions: I) -> Result<Option<Time>, Error>
    where
        I: IntoIterator<Item = (usize, Time)>,
    {
        let iter = completions.into_iter();
        Ok(match self {
            Criterion::Makespan => iter.map(|(_, c)| c).max(),
            Criterion::MaxLateness => {
                let due = inst.due.as_ref().ok_or(Error::MissingDueDates)?;
                iter.map(|(i, c)| c - due[i]).max()
            }
            Criterion::TotalCompletion => Some(iter.map(|(_, c)| c).sum()),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Makespan => "cmax",
            Criterion::MaxLateness => "lmax",
            Criterion::TotalCompletion => "total",
        }
    }
}

/// Objective value of a complete schedule.
pub fn evaluate_criterion(inst: &Instance, sched: &Schedule, crit: Criterion) -> Result<Time, Error> {
    sched.check_dims(inst)?;
    let completions = sched.job_completions(inst);
    let value = crit.aggregate(inst, completions.into_iter().enumerate())?;
    Ok(value.expect("instance has at least one job"))
}

/// One constraint a schedule fails to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Dimensions { expected: (usize, usize), found: (usize, usize) },
    Orders(String),
    NegativeStart { job: usize, op: usize, start: Time },
    Precedence { job: usize, op: usize, start: Time, completion: Time },
    MachineOverlap { machine: usize, before: usize, after: usize, start: Time, completion: Time },
    MinLag { lag: usize, job: usize, start: Time, completion: Time, min: Time },
    MaxLag { lag: usize, job: usize, start: Time, completion: Time, max: Time },
    Release { job: usize, start: Time, release: Time },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimensions { expected, found } => write!(
                f,
                "dimensions: schedule is {}x{}, instance is {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::Orders(msg) => write!(f, "orders: {}", msg),
            Violation::NegativeStart { job, op, start } => {
                write!(f, "negative start: S[{}][{}] = {}", job, op, start)
            }
            Violation::Precedence { job, op, start, completion } => write!(
                f,
                "precedence: job {} operation {} starts at {} < {}",
                job,
                op + 1,
                start,
                completion
            ),
            Violation::MachineOverlap { machine, before, after, start, completion } => write!(
                f,
                "machine overlap: {} < {} (machine {}, job {} after job {})",
                start, completion, machine, after, before
            ),
            Violation::MinLag { lag, job, start, completion, min } => write!(
                f,
                "min lag: {} - {} < {} (lags[{}], job {})",
                start, completion, min, lag, job
            ),
            Violation::MaxLag { lag, job, start, completion, max } => write!(
                f,
                "max lag: {} - {} > {} (lags[{}], job {})",
                start, completion, max, lag, job
            ),
            Violation::Release { job, start, release } => {
                write!(f, "release: job {} starts at {} < {}", job, start, release)
            }
        }
    }
}

/// Checks a schedule against flowshop routing, the given machine orders, every time lag and the release dates.
/// An empty list means the schedule is feasible.
pub fn validate_schedule(inst: &Instance, orders: &MachineOrders, sched: &Schedule) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = inst.jobs();
    let m = inst.machines;
    if let Err(Error::DimensionMismatch { expected, found }) = sched.check_dims(inst) {
        out.push(Violation::Dimensions { expected, found });
        return out;
    }
    if orders.machines() != m {
        out.push(Violation::Orders(alloc::format!("{} orders for {} machines", orders.machines(), m)));
        return out;
    }
    if let Some(bad) = (0..m).find(|&j| !is_permutation_of(orders.machine(j), n)) {
        out.push(Violation::Orders(alloc::format!("order of machine {} is not a permutation", bad)));
        return out;
    }

    for job in 0..n {
        for op in 0..m {
            let start = sched.start[job][op];
            if start < 0 {
                out.push(Violation::NegativeStart { job, op, start });
            }
            if op + 1 < m {
                let completion = sched.completion(inst, job, op);
                let next = sched.start[job][op + 1];
                if next < completion {
                    out.push(Violation::Precedence { job, op, start: next, completion });
                }
            }
        }
    }
    for machine in 0..m {
        for pair in orders.machine(machine).windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let completion = sched.completion(inst, a, machine);
            let start = sched.start[b][machine];
            if start < completion {
                out.push(Violation::MachineOverlap { machine, before: a, after: b, start, completion });
            }
        }
    }
    for (idx, lag) in inst.lags.iter().enumerate() {
        let completion = sched.completion(inst, lag.job, lag.from_op);
        let start = sched.start[lag.job][lag.to_op];
        if start - completion < lag.min_lag {
            out.push(Violation::MinLag { lag: idx, job: lag.job, start, completion, min: lag.min_lag });
        }
        if let MaxLag::Finite(max) = lag.max_lag {
            if start - completion > max {
                out.push(Violation::MaxLag { lag: idx, job: lag.job, start, completion, max });
            }
        }
    }
    if let Some(release) = &inst.release {
        for (job, &r) in release.iter().enumerate() {
            let start = sched.start[job][0];
            if start < r {
                out.push(Violation::Release { job, start, release: r });
            }
        }
    }
    out
}
