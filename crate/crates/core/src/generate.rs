//! Seeded random instances.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::model::{Instance, MaxLag, Time, TimeLag};

/// Parameters of the random instance generator. Ranges are inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub jobs: usize,
    pub machines: usize,
    pub processing: (Time, Time),
    /// Probability that a candidate operation pair of a job receives a lag.
    pub lag_density: f64,
    pub min_lag: (Time, Time),
    /// A finite maximal lag is the minimal lag plus a draw from this range.
    pub max_lag_extra: (Time, Time),
    pub unbounded_probability: f64,
    /// Candidate pairs are all `from < to` couples instead of successive operations only.
    pub arbitrary_lags: bool,
    pub release: Option<(Time, Time)>,
    pub due: Option<(Time, Time)>,
    pub seed: u64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            jobs: 5,
            machines: 3,
            processing: (1, 100),
            lag_density: 0.5,
            min_lag: (0, 50),
            max_lag_extra: (0, 50),
            unbounded_probability: 0.5,
            arbitrary_lags: false,
            release: None,
            due: None,
            seed: 0,
        }
    }
}

impl GeneratorParams {
    /// Preset of the permutation-dominance search: four jobs, two machines, every job lagged with a finite maximum.
    pub fn gap_search() -> Self {
        GeneratorParams { jobs: 4, machines: 2, lag_density: 1.0, unbounded_probability: 0.0, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: &str| Err(Error::PreconditionViolated(alloc::format!("generator: {}", msg)));
        if self.jobs == 0 || self.machines == 0 {
            return bad("job and machine counts must be positive");
        }
        let ranges = [("processing", Some(self.processing)), ("min lag", Some(self.min_lag)),
            ("max lag extra", Some(self.max_lag_extra)), ("release", self.release), ("due", self.due)];
        for (name, range) in ranges {
            if let Some((lo, hi)) = range {
                if lo > hi || lo < 0 {
                    return bad(&alloc::format!("{} range [{}, {}] is empty or negative", name, lo, hi));
                }
            }
        }
        for (name, prob) in [("lag density", self.lag_density), ("unbounded probability", self.unbounded_probability)] {
            if !(0.0..=1.0).contains(&prob) {
                return bad(&alloc::format!("{} {} outside [0, 1]", name, prob));
            }
        }
        Ok(())
    }
}

/// Draws an instance. Identical parameters (seed included) give identical instances.
pub fn generate(params: &GeneratorParams) -> Result<Instance, Error> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (n, m) = (params.jobs, params.machines);
    let processing: Vec<Vec<Time>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_range(params.processing.0..=params.processing.1)).collect())
        .collect();

    let mut lags = Vec::new();
    for job in 0..n {
        for from in 0..m {
            let last_to = if params.arbitrary_lags { m } else { (from + 2).min(m) };
            for to in from + 1..last_to {
                if !rng.gen_bool(params.lag_density) {
                    continue;
                }
                let min = rng.gen_range(params.min_lag.0..=params.min_lag.1);
                let max = if rng.gen_bool(params.unbounded_probability) {
                    MaxLag::Unbounded
                } else {
                    MaxLag::Finite(min + rng.gen_range(params.max_lag_extra.0..=params.max_lag_extra.1))
                };
                lags.push(TimeLag::new(job, from, to, min, max));
            }
        }
    }
    let release = params.release.map(|(lo, hi)| (0..n).map(|_| rng.gen_range(lo..=hi)).collect());
    let due = params.due.map(|(lo, hi)| (0..n).map(|_| rng.gen_range(lo..=hi)).collect());
    Instance { machines: m, processing, lags, release, due }.checked()
}
