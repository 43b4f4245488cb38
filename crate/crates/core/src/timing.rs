//! Least feasible schedules for fixed machine orders.
//!
//! Every constraint of the problem is a difference constraint `S_to >= S_from + weight`. For fixed machine orders
//! the constraints form a [`ConstraintGraph`] whose longest-path distances from a source node (fixed at time zero)
//! are the componentwise-smallest feasible start times. That schedule minimizes every regular criterion at once.
//! Maximal lags create backward arcs, so the graph may contain cycles; a positive cycle means no feasible schedule
//! exists and is returned as a [`CycleWitness`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::model::{Criterion, Instance, MachineOrders, MaxLag, Schedule, Time};

/// A vertex of the constraint graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Source,
    Op { job: usize, op: usize },
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Source => write!(f, "source"),
            Node::Op { job, op } => write!(f, "({},{})", job, op),
        }
    }
}

/// Which constraint an arc encodes. Lag arcs carry the index into `Instance::lags`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    Release,
    Precedence,
    MinLag(usize),
    MaxLag(usize),
    /// Machine capacity. For partial timings the predecessor is folded into the source arc.
    Machine,
}

/// `S[to] >= S[from] + weight`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: Node,
    pub to: Node,
    pub weight: Time,
    pub kind: ArcKind,
}

/// Certificate of infeasibility: a closed walk of positive total weight.
///
/// `nodes` is closed (`nodes.first() == nodes.last()`) and `arcs[k]` runs from `nodes[k]` to `nodes[k + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleWitness {
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
    pub weight: Time,
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "positive cycle ")?;
        for (k, node) in self.nodes.iter().enumerate() {
            if k > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{}", node)?;
        }
        write!(f, " of weight {}", self.weight)
    }
}

/// Difference-constraint graph for one instance and one set of machine orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    machines: usize,
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
}

impl ConstraintGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Position of `node` in the relaxation order: source first, then operations in (job, op) order.
    fn index(&self, node: Node) -> usize {
        match node {
            Node::Source => 0,
            Node::Op { job, op } => 1 + job * self.machines + op,
        }
    }

    /// Longest-path distances from the source, indexed like [`Self::index`], or a positive cycle.
    ///
    /// Label-correcting relaxation: each pass scans nodes in index order and relaxes their outgoing arcs. Without a
    /// positive cycle the labels settle within `V - 1` passes, so a change in pass `V` proves a cycle.
    fn longest_paths(&self) -> Result<Vec<Time>, CycleWitness> {
        let v = self.nodes.len();
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); v];
        for (a, arc) in self.arcs.iter().enumerate() {
            outgoing[self.index(arc.from)].push(a);
        }

        let mut dist: Vec<Option<Time>> = vec![None; v];
        let mut pred: Vec<Option<usize>> = vec![None; v];
        dist[0] = Some(0);
        let mut last_changed = None;
        for _pass in 0..v {
            last_changed = None;
            for u in 0..v {
                let Some(du) = dist[u] else { continue };
                for &a in &outgoing[u] {
                    let arc = &self.arcs[a];
                    let t = self.index(arc.to);
                    let cand = du + arc.weight;
                    if dist[t].is_none_or(|dt| cand > dt) {
                        dist[t] = Some(cand);
                        pred[t] = Some(a);
                        last_changed = Some(t);
                    }
                }
            }
            if last_changed.is_none() {
                return Ok(dist.into_iter().map(|d| d.expect("every node is reachable from the source")).collect());
            }
        }
        let start = last_changed.expect("loop exits early when nothing changed");
        Err(self.extract_cycle(&pred, start))
    }

    /// Recovers a cycle of the predecessor graph. Every cycle there has positive weight.
    fn extract_cycle(&self, pred: &[Option<usize>], start: usize) -> CycleWitness {
        let v = self.nodes.len();
        // Walking back `v` steps from a node updated in the last pass lands on a cycle.
        let mut x = start;
        for _ in 0..v {
            let a = pred[x].expect("a node updated in the last pass has a predecessor chain into a cycle");
            x = self.index(self.arcs[a].from);
        }
        let mut arcs_rev = Vec::new();
        let mut y = x;
        loop {
            let a = pred[y].expect("cycle nodes have predecessors");
            arcs_rev.push(self.arcs[a]);
            y = self.index(self.arcs[a].from);
            if y == x {
                break;
            }
        }
        arcs_rev.reverse();
        canonical_witness(arcs_rev)
    }
}

/// Rotates a cycle so that it starts at its smallest node.
fn canonical_witness(mut arcs: Vec<Arc>) -> CycleWitness {
    let first = arcs
        .iter()
        .enumerate()
        .min_by_key(|(_, a)| a.from)
        .map(|(k, _)| k)
        .expect("cycle is nonempty");
    arcs.rotate_left(first);
    let mut nodes: Vec<Node> = arcs.iter().map(|a| a.from).collect();
    nodes.push(arcs[0].from);
    let weight = arcs.iter().map(|a| a.weight).sum();
    debug_assert!(weight > 0, "predecessor cycles are positive");
    CycleWitness { nodes, arcs, weight }
}

fn push_job_arcs(inst: &Instance, job: usize, arcs: &mut Vec<Arc>) {
    let m = inst.machines;
    for op in 0..m.saturating_sub(1) {
        arcs.push(Arc {
            from: Node::Op { job, op },
            to: Node::Op { job, op: op + 1 },
            weight: inst.p(job, op),
            kind: ArcKind::Precedence,
        });
    }
    for (idx, lag) in inst.lags.iter().enumerate().filter(|(_, l)| l.job == job) {
        let from = Node::Op { job, op: lag.from_op };
        let to = Node::Op { job, op: lag.to_op };
        let p = inst.p(job, lag.from_op);
        arcs.push(Arc { from, to, weight: p + lag.min_lag, kind: ArcKind::MinLag(idx) });
        if let MaxLag::Finite(max) = lag.max_lag {
            arcs.push(Arc { from: to, to: from, weight: -(p + max), kind: ArcKind::MaxLag(idx) });
        }
    }
}

/// Builds the difference-constraint graph of `inst` under `orders`.
///
/// Arcs: release arcs from the source, precedence arcs along each job, one forward arc per lag and one backward arc
/// per finite maximal lag, and one capacity arc per consecutive pair on each machine.
pub fn build_constraint_graph(inst: &Instance, orders: &MachineOrders) -> ConstraintGraph {
    let n = inst.jobs();
    let m = inst.machines;
    let mut nodes = Vec::with_capacity(n * m + 1);
    nodes.push(Node::Source);
    for job in 0..n {
        for op in 0..m {
            nodes.push(Node::Op { job, op });
        }
    }
    let mut arcs = Vec::new();
    for job in 0..n {
        arcs.push(Arc {
            from: Node::Source,
            to: Node::Op { job, op: 0 },
            weight: inst.release_of(job),
            kind: ArcKind::Release,
        });
    }
    for job in 0..n {
        push_job_arcs(inst, job, &mut arcs);
    }
    for machine in 0..m {
        for pair in orders.machine(machine).windows(2) {
            arcs.push(Arc {
                from: Node::Op { job: pair[0], op: machine },
                to: Node::Op { job: pair[1], op: machine },
                weight: inst.p(pair[0], machine),
                kind: ArcKind::Machine,
            });
        }
    }
    ConstraintGraph { machines: m, nodes, arcs }
}

/// The componentwise-least feasible schedule for `orders`, or a positive cycle proving there is none.
///
/// `inst` must be valid and every order must be a permutation of the jobs.
pub fn least_schedule(inst: &Instance, orders: &MachineOrders) -> Result<Schedule, CycleWitness> {
    let graph = build_constraint_graph(inst, orders);
    let dist = graph.longest_paths()?;
    let m = inst.machines;
    let start = (0..inst.jobs()).map(|job| dist[1 + job * m..1 + (job + 1) * m].to_vec()).collect();
    Ok(Schedule::new(start))
}

/// Graph of one job alone. `avail[j]`, when given, is a lower bound on the start of operation `j` (the completion
/// of the preceding job on machine `j`).
fn job_graph(inst: &Instance, job: usize, avail: Option<&[Time]>) -> ConstraintGraph {
    let m = inst.machines;
    let mut nodes = vec![Node::Source];
    nodes.extend((0..m).map(|op| Node::Op { job, op }));
    let mut arcs = vec![Arc {
        from: Node::Source,
        to: Node::Op { job, op: 0 },
        weight: inst.release_of(job),
        kind: ArcKind::Release,
    }];
    if let Some(avail) = avail {
        for (op, &a) in avail.iter().enumerate() {
            arcs.push(Arc { from: Node::Source, to: Node::Op { job, op }, weight: a, kind: ArcKind::Machine });
        }
    }
    push_job_arcs(inst, job, &mut arcs);
    // Local node numbering: the graph only holds this job, so shift it to job slot 0.
    let mut g = ConstraintGraph { machines: m, nodes, arcs };
    let local = |node: Node| match node {
        Node::Source => Node::Source,
        Node::Op { op, .. } => Node::Op { job: 0, op },
    };
    g.nodes = g.nodes.iter().map(|&n| local(n)).collect();
    for arc in &mut g.arcs {
        arc.from = local(arc.from);
        arc.to = local(arc.to);
    }
    g
}

fn relabel(mut witness: CycleWitness, job: usize) -> CycleWitness {
    let fix = |node: &mut Node| {
        if let Node::Op { job: j, .. } = node {
            *j = job;
        }
    };
    witness.nodes.iter_mut().for_each(fix);
    for arc in &mut witness.arcs {
        fix(&mut arc.from);
        fix(&mut arc.to);
    }
    witness
}

/// Positive cycle inside the job's own constraints, if any.
pub fn job_cycle(inst: &Instance, job: usize) -> Option<CycleWitness> {
    job_graph(inst, job, None).longest_paths().err().map(|w| relabel(w, job))
}

/// True iff the job's own constraints (precedence and lags) admit a schedule.
pub fn job_feasible(inst: &Instance, job: usize) -> bool {
    relax_job(inst, job, None).is_some()
}

/// First job that is internally infeasible, with its cycle.
pub fn first_infeasible_job(inst: &Instance) -> Option<(usize, CycleWitness)> {
    (0..inst.jobs()).find(|&j| !job_feasible(inst, j)).map(|j| {
        let w = job_cycle(inst, j).expect("relaxation and graph agree on infeasibility");
        (j, w)
    })
}

/// Earliest starts of one job given per-machine lower bounds; `None` if the job's constraints cycle.
///
/// Equivalent to the longest paths of the job graph, specialised to avoid building it: arcs are relaxed directly
/// from the instance data, at most `m + 1` passes.
pub(crate) fn relax_job(inst: &Instance, job: usize, avail: Option<&[Time]>) -> Option<Vec<Time>> {
    let m = inst.machines;
    let p = &inst.processing[job];
    let mut s = vec![0; m];
    if let Some(avail) = avail {
        s.copy_from_slice(avail);
    }
    s[0] = s[0].max(inst.release_of(job));
    for _pass in 0..=m {
        let mut changed = false;
        for op in 0..m - 1 {
            let c = s[op] + p[op];
            if c > s[op + 1] {
                s[op + 1] = c;
                changed = true;
            }
        }
        for lag in inst.lags_of(job) {
            let fwd = s[lag.from_op] + p[lag.from_op] + lag.min_lag;
            if fwd > s[lag.to_op] {
                s[lag.to_op] = fwd;
                changed = true;
            }
            if let MaxLag::Finite(max) = lag.max_lag {
                let back = s[lag.to_op] - p[lag.from_op] - max;
                if back > s[lag.from_op] {
                    s[lag.from_op] = back;
                    changed = true;
                }
            }
        }
        if !changed {
            return Some(s);
        }
    }
    None
}

/// Lower bound on `C[job][m-1] - C[job][k]` from processing times and minimal lags only.
pub fn internal_tail(inst: &Instance, job: usize, k: usize) -> Time {
    let m = inst.machines;
    let p = &inst.processing[job];
    // longest[j]: longest path from the start of op k to the start of op j along forward arcs.
    let mut longest: Vec<Option<Time>> = vec![None; m];
    longest[k] = Some(0);
    for op in k..m {
        let Some(here) = longest[op] else { continue };
        let mut reach = |to: usize, w: Time| {
            if longest[to].is_none_or(|v| here + w > v) {
                longest[to] = Some(here + w);
            }
        };
        if op + 1 < m {
            reach(op + 1, p[op]);
        }
        for lag in inst.lags_of(job).filter(|l| l.from_op == op) {
            reach(lag.to_op, p[op] + lag.min_lag);
        }
    }
    longest[m - 1].expect("the last operation is reachable along the route") + p[m - 1] - p[k]
}

/// `tails[job][k] = internal_tail(inst, job, k)`
pub fn tail_table(inst: &Instance) -> Vec<Vec<Time>> {
    (0..inst.jobs()).map(|j| (0..inst.machines).map(|k| internal_tail(inst, j, k)).collect()).collect()
}

/// Least schedule of a permutation prefix, extended one job at a time.
///
/// With a common sequence every capacity arc points forward along the sequence, so appending a job never moves the
/// jobs already placed. Each new job is timed from the completions of its predecessor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixSchedule {
    jobs: Vec<usize>,
    start: Vec<Vec<Time>>,
    completion: Vec<Vec<Time>>,
}

impl PrefixSchedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn jobs(&self) -> &[usize] {
        &self.jobs
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    /// Start times of the job at sequence position `pos`.
    pub fn start_at(&self, pos: usize) -> &[Time] {
        &self.start[pos]
    }

    pub fn completion_at(&self, pos: usize) -> &[Time] {
        &self.completion[pos]
    }

    /// Completion of the last operation on every machine (all zeros when empty).
    pub fn machine_ready(&self, machines: usize) -> Vec<Time> {
        self.completion.last().cloned().unwrap_or_else(|| vec![0; machines])
    }

    /// Appends `job`. On failure the prefix is left unchanged.
    pub fn push(&mut self, inst: &Instance, job: usize) -> Result<(), CycleWitness> {
        let avail = self.completion.last().map(|c| c.as_slice());
        match relax_job(inst, job, avail) {
            Some(start) => {
                let completion = start.iter().zip(&inst.processing[job]).map(|(s, p)| s + p).collect();
                self.jobs.push(job);
                self.start.push(start);
                self.completion.push(completion);
                Ok(())
            }
            None => {
                let g = job_graph(inst, job, avail);
                let w = g.longest_paths().expect_err("relaxation and graph agree on infeasibility");
                Err(relabel(w, job))
            }
        }
    }

    pub fn pop(&mut self) -> Option<usize> {
        self.start.pop();
        self.completion.pop();
        self.jobs.pop()
    }

    /// `(job, completion of its last operation)` for every placed job.
    pub fn final_completions(&self) -> impl Iterator<Item = (usize, Time)> + '_ {
        self.jobs.iter().zip(&self.completion).map(|(&j, c)| (j, *c.last().expect("m >= 1")))
    }

    /// Full schedule, indexed by job. Only meaningful once every job is placed.
    pub fn to_schedule(&self) -> Schedule {
        let mut start = vec![Vec::new(); self.jobs.len()];
        for (pos, &job) in self.jobs.iter().enumerate() {
            start[job] = self.start[pos].clone();
        }
        Schedule::new(start)
    }
}

/// Least schedule of a complete permutation through incremental timing.
pub fn time_permutation(inst: &Instance, perm: &[usize]) -> Result<Schedule, CycleWitness> {
    let mut prefix = PrefixSchedule::new();
    for &job in perm {
        prefix.push(inst, job)?;
    }
    Ok(prefix.to_schedule())
}

/// Objective value of a (partial or complete) permutation under its least schedule.
pub fn permutation_value(inst: &Instance, perm: &[usize], crit: Criterion) -> Result<Time, Error> {
    let mut prefix = PrefixSchedule::new();
    for &job in perm {
        prefix
            .push(inst, job)
            .map_err(|witness| Error::Infeasible { job: Some(job), witness })?;
    }
    Ok(crit.aggregate(inst, prefix.final_completions())?.unwrap_or(0))
}
