//! Solution methods behind `flowlag solve` and `flowlag bench`.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use flowlag_core::exact::{brute_force_general, brute_force_permutation_capped, SearchOptions};
use flowlag_core::heuristics::neh_insertion;
use flowlag_core::model::{evaluate_criterion, Criterion, Instance, MachineOrders, Schedule, Time};
use flowlag_core::timing::{first_infeasible_job, least_schedule, time_permutation};
use flowlag_core::twomachine::f2_minlag_given_m1;
use flowlag_core::Error;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Bnb,
    Neh,
    BrutePerm,
    BruteGeneral,
    F2Restricted,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Bnb, Method::Neh, Method::BrutePerm, Method::BruteGeneral, Method::F2Restricted];

    pub fn name(self) -> &'static str {
        match self {
            Method::Bnb => "bnb",
            Method::Neh => "neh",
            Method::BrutePerm => "brute-perm",
            Method::BruteGeneral => "brute-general",
            Method::F2Restricted => "f2-restricted",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {:?}", s))
    }
}

/// Settings shared by every method; each method reads the ones that apply to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveSettings {
    pub criterion: Criterion,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub workers: usize,
    /// Seeds the shuffled machine-1 order of `f2-restricted` when no order is given.
    pub seed: u64,
    pub m1_order: Option<Vec<usize>>,
    /// Largest job count for `brute-perm`.
    pub perm_cap: usize,
    /// Largest number of order tuples for `brute-general`.
    pub general_cap: u64,
}

impl Default for SolveSettings {
    fn default() -> Self {
        SolveSettings {
            criterion: Criterion::Makespan,
            node_limit: None,
            time_limit: None,
            workers: 1,
            seed: 0,
            m1_order: None,
            perm_cap: flowlag_core::exact::DEFAULT_PERMUTATION_CAP,
            general_cap: 1_000_000,
        }
    }
}

/// Result document printed by `flowlag solve`. Field order is fixed; no timing data, so identical runs print
/// identical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub method: &'static str,
    pub criterion: &'static str,
    pub value: Time,
    /// The value is proven optimal for the method's search space.
    pub optimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    pub orders: Vec<Vec<usize>>,
    pub start: Vec<Vec<Time>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_explored: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_lower_bound: Option<Time>,
}

impl Solution {
    fn from_orders(method: Method, crit: Criterion, value: Time, optimal: bool, orders: MachineOrders, sched: Schedule) -> Self {
        Solution {
            method: method.name(),
            criterion: crit.name(),
            value,
            optimal,
            permutation: orders.as_permutation().map(<[usize]>::to_vec),
            orders: orders.into_inner(),
            start: sched.start,
            nodes_explored: None,
            root_lower_bound: None,
        }
    }
}

fn timed_permutation(inst: &Instance, perm: &[usize]) -> Result<Schedule, Error> {
    time_permutation(inst, perm).map_err(|witness| Error::Infeasible { job: None, witness })
}

pub fn run_method(inst: &Instance, method: Method, settings: &SolveSettings) -> Result<Solution, Error> {
    let crit = settings.criterion;
    match method {
        Method::Bnb => {
            let opts = SearchOptions {
                criterion: crit,
                node_limit: settings.node_limit,
                time_limit: settings.time_limit,
                worker_count: settings.workers,
                deterministic: settings.workers == 1,
            };
            let r = parallel::solve_bnb(inst, &opts)?;
            log::info!("bnb: {} nodes in {:?}", r.nodes_explored, r.elapsed);
            let sched = timed_permutation(inst, &r.best_perm)?;
            let orders = MachineOrders::from_permutation(&r.best_perm, inst.machines);
            let mut sol = Solution::from_orders(method, crit, r.value, r.optimal, orders, sched);
            sol.nodes_explored = Some(r.nodes_explored);
            sol.root_lower_bound = Some(r.root_lower_bound);
            Ok(sol)
        }
        Method::Neh => {
            let (perm, value) = neh_insertion(inst, crit)?;
            let sched = timed_permutation(inst, &perm)?;
            let orders = MachineOrders::from_permutation(&perm, inst.machines);
            Ok(Solution::from_orders(method, crit, value, false, orders, sched))
        }
        Method::BrutePerm => {
            let (perm, value) = brute_force_permutation_capped(inst, crit, settings.perm_cap)?;
            let sched = timed_permutation(inst, &perm)?;
            let orders = MachineOrders::from_permutation(&perm, inst.machines);
            Ok(Solution::from_orders(method, crit, value, true, orders, sched))
        }
        Method::BruteGeneral => {
            // The enumeration alone only reports that every tuple failed; name the offending job first.
            if let Some((job, witness)) = first_infeasible_job(inst) {
                return Err(Error::Infeasible { job: Some(job), witness });
            }
            let (orders, value) = brute_force_general(inst, crit, settings.general_cap)?;
            let sched = least_schedule(inst, &orders).map_err(|witness| Error::Infeasible { job: None, witness })?;
            Ok(Solution::from_orders(method, crit, value, true, orders, sched))
        }
        Method::F2Restricted => {
            let m1 = match &settings.m1_order {
                Some(order) => order.clone(),
                None => {
                    let mut order: Vec<usize> = (0..inst.jobs()).collect();
                    order.shuffle(&mut ChaCha8Rng::seed_from_u64(settings.seed));
                    order
                }
            };
            let (orders, sched) = f2_minlag_given_m1(inst, &m1)?;
            let value = evaluate_criterion(inst, &sched, crit)?;
            // Optimal for the fixed machine-1 order only, so not reported as optimal.
            Ok(Solution::from_orders(method, crit, value, false, orders, sched))
        }
    }
}
