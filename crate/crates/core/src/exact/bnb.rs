use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use core::time::Duration;

use super::bound::Bounder;
use super::{BnBResult, Clock, SearchOptions};
use crate::error::Error;
use crate::heuristics::neh_insertion;
use crate::model::{validate_instance, Criterion, Instance, Time};
use crate::timing::{first_infeasible_job, permutation_value, PrefixSchedule};
use crate::transforms::lmax_to_cmax;

/// Best complete permutation found so far, ordered by `(value, permutation)`.
///
/// Implementations must only ever move to a strictly smaller pair, which makes the final incumbent the
/// lexicographically smallest optimal permutation regardless of exploration order.
pub trait Incumbent {
    fn best(&self) -> Option<(Vec<usize>, Time)>;

    /// Whether a subtree with this prefix and lower bound can still hold a smaller pair.
    fn admits(&self, prefix: &[usize], bound: Time) -> bool;

    /// Offers a complete permutation; returns true if it became the incumbent.
    fn offer(&self, perm: &[usize], value: Time) -> bool;
}

/// Pruning rule shared by [`Incumbent`] implementations: a subtree is kept if its bound beats the incumbent value,
/// or ties it while the prefix could still lead to a lexicographically smaller permutation.
pub fn admits_against(best: Option<(&[usize], Time)>, prefix: &[usize], bound: Time) -> bool {
    match best {
        None => true,
        Some((perm, value)) => bound < value || (bound == value && prefix <= &perm[..prefix.len()]),
    }
}

/// Whether `(value, perm)` is strictly smaller than the incumbent pair.
pub fn improves(best: Option<(&[usize], Time)>, perm: &[usize], value: Time) -> bool {
    match best {
        None => true,
        Some((p, v)) => (value, perm) < (v, p),
    }
}

/// Single-threaded incumbent.
#[derive(Debug, Default)]
pub struct LocalIncumbent {
    best: RefCell<Option<(Vec<usize>, Time)>>,
}

impl LocalIncumbent {
    pub fn new(initial: Option<(Vec<usize>, Time)>) -> Self {
        LocalIncumbent { best: RefCell::new(initial) }
    }
}

impl Incumbent for LocalIncumbent {
    fn best(&self) -> Option<(Vec<usize>, Time)> {
        self.best.borrow().clone()
    }

    fn admits(&self, prefix: &[usize], bound: Time) -> bool {
        let best = self.best.borrow();
        admits_against(best.as_ref().map(|(p, v)| (p.as_slice(), *v)), prefix, bound)
    }

    fn offer(&self, perm: &[usize], value: Time) -> bool {
        let mut best = self.best.borrow_mut();
        if improves(best.as_ref().map(|(p, v)| (p.as_slice(), *v)), perm, value) {
            *best = Some((perm.to_vec(), value));
            true
        } else {
            false
        }
    }
}

/// Node and time accounting for a search, possibly shared by several workers.
pub trait SearchControl {
    /// Called before each node is created; `false` aborts the search.
    fn tick(&self) -> bool;
}

/// Node limit plus optional time limit against a [`Clock`].
pub struct Budget<'a> {
    nodes: AtomicU64,
    stopped: AtomicBool,
    node_limit: Option<u64>,
    time_limit: Option<Duration>,
    clock: &'a (dyn Clock + Sync),
}

impl<'a> Budget<'a> {
    pub fn new(node_limit: Option<u64>, time_limit: Option<Duration>, clock: &'a (dyn Clock + Sync)) -> Self {
        Budget { nodes: AtomicU64::new(0), stopped: AtomicBool::new(false), node_limit, time_limit, clock }
    }

    /// Nodes created so far.
    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }
}

impl SearchControl for Budget<'_> {
    fn tick(&self) -> bool {
        if self.stopped() {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.node_limit.is_some_and(|limit| n > limit);
        let over_time = n.is_multiple_of(64) && self.time_limit.is_some_and(|limit| self.clock.elapsed() >= limit);
        if over_nodes || over_time {
            self.nodes.fetch_sub(1, Ordering::Relaxed);
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// The instance actually searched. `L_max` is turned into `C_max` on the tail-embedded instance; `offset` maps
/// values back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub inst: Instance,
    pub criterion: Criterion,
    pub offset: Time,
}

impl SearchProblem {
    /// Validates `inst`, rejects internally infeasible jobs and applies the lateness reduction.
    pub fn new(inst: &Instance, criterion: Criterion) -> Result<Self, Error> {
        let defects = validate_instance(inst);
        if !defects.is_empty() {
            return Err(Error::InvalidInstance(defects));
        }
        if let Some((job, witness)) = first_infeasible_job(inst) {
            return Err(Error::Infeasible { job: Some(job), witness });
        }
        match criterion {
            Criterion::MaxLateness => {
                let t = lmax_to_cmax(inst)?;
                Ok(SearchProblem { inst: t.inst, criterion: Criterion::Makespan, offset: t.offset })
            }
            _ => Ok(SearchProblem { inst: inst.clone(), criterion, offset: 0 }),
        }
    }

    /// NEH permutation and its value on the searched instance.
    pub fn initial_incumbent(&self) -> Result<(Vec<usize>, Time), Error> {
        neh_insertion(&self.inst, self.criterion)
    }

    /// Packages a finished (or interrupted) search. The value is re-timed from the permutation.
    pub fn finish(
        &self,
        best: (Vec<usize>, Time),
        optimal: bool,
        nodes_explored: u64,
        root_lower_bound: Time,
        elapsed: Duration,
    ) -> Result<BnBResult, Error> {
        let (best_perm, _) = best;
        let value = permutation_value(&self.inst, &best_perm, self.criterion)? - self.offset;
        Ok(BnBResult {
            best_perm,
            value,
            optimal,
            nodes_explored,
            root_lower_bound: root_lower_bound - self.offset,
            elapsed,
        })
    }
}

/// Depth-first enumeration of permutation prefixes with bounding.
pub struct SearchTree<'a> {
    problem: &'a SearchProblem,
    bounder: Bounder,
}

impl<'a> SearchTree<'a> {
    pub fn new(problem: &'a SearchProblem) -> Result<Self, Error> {
        let bounder = Bounder::new(&problem.inst, problem.criterion)?;
        Ok(SearchTree { problem, bounder })
    }

    pub fn jobs(&self) -> usize {
        self.problem.inst.jobs()
    }

    pub fn root_bound(&self) -> Time {
        let all: Vec<usize> = (0..self.jobs()).collect();
        self.bounder.bound(&self.problem.inst, &PrefixSchedule::new(), &all)
    }

    /// Explores the subtree below `prefix` (children appended in ascending job order). Returns false if the
    /// control aborted the search.
    pub fn explore(&self, prefix: &[usize], incumbent: &dyn Incumbent, control: &dyn SearchControl) -> bool {
        let inst = &self.problem.inst;
        let mut used = vec![false; self.jobs()];
        let mut state = PrefixSchedule::new();
        if !prefix.is_empty() && !control.tick() {
            return false;
        }
        for &job in prefix {
            if state.push(inst, job).is_err() {
                return true;
            }
            used[job] = true;
        }
        if !prefix.is_empty() {
            let remaining: Vec<usize> = (0..self.jobs()).filter(|&j| !used[j]).collect();
            if !incumbent.admits(prefix, self.bounder.bound(inst, &state, &remaining)) {
                return true;
            }
        }
        self.dfs(&mut state, &mut used, incumbent, control)
    }

    fn dfs(
        &self,
        state: &mut PrefixSchedule,
        used: &mut [bool],
        incumbent: &dyn Incumbent,
        control: &dyn SearchControl,
    ) -> bool {
        let inst = &self.problem.inst;
        let n = self.jobs();
        if state.len() == n {
            let value = self
                .problem
                .criterion
                .aggregate(inst, state.final_completions())
                .expect("criterion checked when the search was set up")
                .expect("complete permutation");
            incumbent.offer(state.jobs(), value);
            return true;
        }
        for job in 0..n {
            if used[job] {
                continue;
            }
            if !control.tick() {
                return false;
            }
            // Cannot fail once every job is internally feasible: capacity arcs only point forward.
            if state.push(inst, job).is_err() {
                continue;
            }
            used[job] = true;
            let remaining: Vec<usize> = (0..n).filter(|&j| !used[j]).collect();
            let bound = self.bounder.bound(inst, state, &remaining);
            let keep_going = !incumbent.admits(state.jobs(), bound) || self.dfs(state, used, incumbent, control);
            used[job] = false;
            state.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Sequential branch-and-bound over permutations.
///
/// The incumbent starts from NEH; children are appended in ascending job index, depth first. `L_max` is solved as
/// `C_max` on the tail-embedded instance and shifted back. `opts.worker_count` is ignored here; the `flowlag` crate
/// provides the multi-threaded driver over the same [`SearchTree`].
pub fn solve_bnb(inst: &Instance, opts: &SearchOptions, clock: &(dyn Clock + Sync)) -> Result<BnBResult, Error> {
    opts.validate()?;
    let problem = SearchProblem::new(inst, opts.criterion)?;
    let tree = SearchTree::new(&problem)?;
    let incumbent = LocalIncumbent::new(Some(problem.initial_incumbent()?));
    let root = tree.root_bound();
    let budget = Budget::new(opts.node_limit, opts.time_limit, clock);
    let completed = tree.explore(&[], &incumbent, &budget);
    let best = incumbent.best().expect("seeded with the NEH permutation");
    problem.finish(best, completed, budget.nodes(), root, clock.elapsed())
}
