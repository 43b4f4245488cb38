//! JSON instance and schedule files.
//!
//! Instance file:
//!
//! ```json
//! {
//!   "machines": 2,
//!   "jobs": [{"processing": [2, 3], "release": 0, "due": 10}],
//!   "lags": [{"job": 0, "from": 0, "to": 1, "min": 1, "max": null}]
//! }
//! ```
//!
//! `"max": null` (or an absent `max`) is an unbounded maximal lag. Unknown members are rejected. Release dates may be
//! given for some jobs only (the others default to 0); due dates must be given for all jobs or none.

use flowlag_core::model::{validate_instance, Defect, Instance, MachineOrders, MaxLag, Schedule, Time, TimeLag};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid instance: {}", join_defects(.0))]
    Invalid(Vec<Defect>),
}

fn join_defects(defects: &[Defect]) -> String {
    defects.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub machines: usize,
    pub jobs: Vec<JobEntry>,
    #[serde(default)]
    pub lags: Vec<LagEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobEntry {
    pub processing: Vec<Time>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub release: Option<Time>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub due: Option<Time>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagEntry {
    pub job: usize,
    pub from: usize,
    pub to: usize,
    pub min: Time,
    #[serde(default)]
    pub max: Option<Time>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let jobs = inst
            .processing
            .iter()
            .enumerate()
            .map(|(j, row)| JobEntry {
                processing: row.clone(),
                release: inst.release.as_ref().map(|r| r[j]),
                due: inst.due.as_ref().map(|d| d[j]),
            })
            .collect();
        let lags = inst
            .lags
            .iter()
            .map(|l| LagEntry { job: l.job, from: l.from_op, to: l.to_op, min: l.min_lag, max: l.max_lag.finite() })
            .collect();
        InstanceFile { machines: inst.machines, jobs, lags }
    }

    pub fn into_instance(self) -> Result<Instance, FormatError> {
        let release = if self.jobs.iter().any(|j| j.release.is_some()) {
            Some(self.jobs.iter().map(|j| j.release.unwrap_or(0)).collect())
        } else {
            None
        };
        let due = match self.jobs.iter().position(|j| j.due.is_none()) {
            None => Some(self.jobs.iter().map(|j| j.due.expect("all present")).collect()),
            Some(_) if self.jobs.iter().all(|j| j.due.is_none()) => None,
            Some(missing) => {
                return Err(FormatError::Schema(format!(
                    "jobs[{}].due is missing while other jobs have due dates",
                    missing
                )))
            }
        };
        let inst = Instance {
            machines: self.machines,
            processing: self.jobs.into_iter().map(|j| j.processing).collect(),
            lags: self
                .lags
                .into_iter()
                .map(|l| TimeLag::new(l.job, l.from, l.to, l.min, MaxLag::from(l.max)))
                .collect(),
            release,
            due,
        };
        let defects = validate_instance(&inst);
        if defects.is_empty() {
            Ok(inst)
        } else {
            Err(FormatError::Invalid(defects))
        }
    }
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.into_instance()
}

/// Pretty-printed instance file, newline-terminated.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut text = serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("plain data serializes");
    text.push('\n');
    text
}

/// A schedule file: start times plus, optionally, the machine orders they were built for.
///
/// Unknown members are ignored, so the output of `flowlag solve` is itself a valid schedule file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub start: Vec<Vec<Time>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
}

impl ScheduleFile {
    pub fn schedule(&self) -> Schedule {
        Schedule::new(self.start.clone())
    }

    /// Explicit orders, else the permutation, else the orders implied by the start times.
    pub fn orders(&self, inst: &Instance) -> Result<MachineOrders, FormatError> {
        let checked = |orders: Vec<Vec<usize>>| {
            MachineOrders::new(orders, inst.jobs()).map_err(|e| FormatError::Schema(e.to_string()))
        };
        if let Some(orders) = &self.orders {
            if orders.len() != inst.machines {
                return Err(FormatError::Schema(format!(
                    "{} machine orders for {} machines",
                    orders.len(),
                    inst.machines
                )));
            }
            return checked(orders.clone());
        }
        if let Some(perm) = &self.permutation {
            return checked(vec![perm.clone(); inst.machines]);
        }
        let sched = self.schedule();
        if sched.jobs() != inst.jobs() || sched.start.iter().any(|r| r.len() != inst.machines) {
            return Err(FormatError::Schema("start matrix does not match the instance".into()));
        }
        Ok(MachineOrders::from_start_times(&sched, inst.machines))
    }
}

pub fn parse_schedule(text: &str) -> Result<ScheduleFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}
