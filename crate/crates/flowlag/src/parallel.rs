//! Multi-threaded branch-and-bound.
//!
//! The permutation tree is cut into subtrees (first one or two jobs fixed); scoped worker threads pull subtrees
//! from a shared counter and explore them with the core search, sharing one incumbent and one node budget. The
//! incumbent only moves to a smaller `(value, permutation)` pair, so every run returns the same optimum; node
//! counts vary between runs.

use std::sync::atomic::{AtomicBool, AtomicI64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use flowlag_core::exact::{self, admits_against, improves, BnBResult, Budget, Clock, Incumbent, SearchOptions,
    SearchProblem, SearchTree};
use flowlag_core::model::{Instance, Time};
use flowlag_core::Error;

/// Wall clock started at construction.
#[derive(Debug, Clone, Copy)]
pub struct InstantClock(Instant);

impl InstantClock {
    pub fn start() -> Self {
        InstantClock(Instant::now())
    }
}

impl Clock for InstantClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

/// Incumbent shared between threads. The value is mirrored in an atomic so most pruning checks avoid the lock.
#[derive(Debug)]
pub struct SharedIncumbent {
    value: AtomicI64,
    best: Mutex<Option<(Vec<usize>, Time)>>,
}

impl SharedIncumbent {
    pub fn new(initial: Option<(Vec<usize>, Time)>) -> Self {
        let value = initial.as_ref().map_or(Time::MAX, |(_, v)| *v);
        SharedIncumbent { value: AtomicI64::new(value), best: Mutex::new(initial) }
    }
}

impl Incumbent for SharedIncumbent {
    fn best(&self) -> Option<(Vec<usize>, Time)> {
        self.best.lock().expect("incumbent lock").clone()
    }

    fn admits(&self, prefix: &[usize], bound: Time) -> bool {
        let value = self.value.load(Ordering::Acquire);
        if bound != value {
            return bound < value;
        }
        let best = self.best.lock().expect("incumbent lock");
        admits_against(best.as_ref().map(|(p, v)| (p.as_slice(), *v)), prefix, bound)
    }

    fn offer(&self, perm: &[usize], value: Time) -> bool {
        let mut best = self.best.lock().expect("incumbent lock");
        if improves(best.as_ref().map(|(p, v)| (p.as_slice(), *v)), perm, value) {
            *best = Some((perm.to_vec(), value));
            self.value.store(value, Ordering::Release);
            true
        } else {
            false
        }
    }
}

/// Subtree roots: single jobs, or ordered pairs when there are more workers than jobs.
fn subtree_roots(jobs: usize, workers: usize) -> Vec<Vec<usize>> {
    if jobs >= 2 && workers > jobs {
        (0..jobs).flat_map(|a| (0..jobs).filter(move |&b| b != a).map(move |b| vec![a, b])).collect()
    } else {
        (0..jobs).map(|j| vec![j]).collect()
    }
}

/// Branch-and-bound with `opts.worker_count` threads; a single worker runs the core sequential search.
pub fn solve_bnb(inst: &Instance, opts: &SearchOptions) -> Result<BnBResult, Error> {
    let clock = InstantClock::start();
    opts.validate()?;
    if opts.worker_count == 1 {
        return exact::solve_bnb(inst, opts, &clock);
    }
    let problem = SearchProblem::new(inst, opts.criterion)?;
    let tree = SearchTree::new(&problem)?;
    let incumbent = SharedIncumbent::new(Some(problem.initial_incumbent()?));
    let root = tree.root_bound();
    let budget = Budget::new(opts.node_limit, opts.time_limit, &clock);
    let roots = subtree_roots(tree.jobs(), opts.worker_count);
    let next = AtomicUsize::new(0);
    let completed = AtomicBool::new(true);

    thread::scope(|scope| {
        for _ in 0..opts.worker_count {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(prefix) = roots.get(k) else { break };
                if !tree.explore(prefix, &incumbent, &budget) {
                    completed.store(false, Ordering::Relaxed);
                    break;
                }
            });
        }
    });
    log::debug!("parallel search: {} subtrees, {} nodes", roots.len(), budget.nodes());

    let best = incumbent.best().expect("seeded with the NEH permutation");
    problem.finish(best, completed.load(Ordering::Relaxed), budget.nodes(), root, clock.elapsed())
}
