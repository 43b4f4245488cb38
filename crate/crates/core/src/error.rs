use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::Defect;
use crate::timing::CycleWitness;

/// Errors raised by the solver entry points.
///
/// Validation functions ([`crate::model::validate_instance`], [`crate::model::validate_schedule`]) never fail; they
/// report lists of defects instead. This type covers the operations that cannot proceed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The instance violates one or more structural invariants.
    InvalidInstance(Vec<Defect>),
    /// No feasible schedule exists. `job` is set when a single job is internally inconsistent.
    Infeasible { job: Option<usize>, witness: CycleWitness },
    /// Every candidate evaluated by an enumeration was infeasible.
    AllInfeasible,
    MissingDueDates,
    MissingReleaseDates,
    LengthMismatch { what: &'static str, expected: usize, found: usize },
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    /// An enumeration would exceed its configured size cap.
    CapExceeded { cap: u64, required: u64 },
    PreconditionViolated(String),
    InvalidOrders(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInstance(defects) => {
                write!(f, "invalid instance:")?;
                for d in defects {
                    write!(f, " [{}]", d)?;
                }
                Ok(())
            }
            Error::Infeasible { job: Some(job), witness } => {
                write!(f, "job {} is internally infeasible: {}", job, witness)
            }
            Error::Infeasible { job: None, witness } => write!(f, "infeasible: {}", witness),
            Error::AllInfeasible => write!(f, "every enumerated schedule is infeasible"),
            Error::MissingDueDates => write!(f, "criterion requires due dates but the instance has none"),
            Error::MissingReleaseDates => write!(f, "instance has no release dates"),
            Error::LengthMismatch { what, expected, found } => {
                write!(f, "{} has length {}, expected {}", what, found, expected)
            }
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "schedule is {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Error::CapExceeded { cap, required } => {
                write!(f, "enumeration needs {} candidates, cap is {}", required, cap)
            }
            Error::PreconditionViolated(msg) => write!(f, "precondition violated: {}", msg),
            Error::InvalidOrders(msg) => write!(f, "invalid machine orders: {}", msg),
        }
    }
}

impl core::error::Error for Error {}
