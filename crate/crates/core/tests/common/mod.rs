//! Test-only oracles. Nothing here calls into the timing engine or the search; each oracle recomputes its answer
//! from the raw instance data by enumeration.
#![allow(dead_code)]

use flowlag_core::generate::{generate, GeneratorParams};
use flowlag_core::model::{Instance, MaxLag, Time};

/// Direct check of every constraint for a start matrix. `orders[k]` is the job sequence of machine `k`.
pub fn feasible(inst: &Instance, orders: &[Vec<usize>], start: &[Vec<Time>]) -> bool {
    let m = inst.machines;
    let p = &inst.processing;
    for (i, row) in start.iter().enumerate() {
        if row[0] < inst.release.as_ref().map_or(0, |r| r[i]) {
            return false;
        }
        for j in 0..m {
            if row[j] < 0 {
                return false;
            }
            if j + 1 < m && row[j + 1] < row[j] + p[i][j] {
                return false;
            }
        }
    }
    for (k, order) in orders.iter().enumerate() {
        for w in order.windows(2) {
            if start[w[1]][k] < start[w[0]][k] + p[w[0]][k] {
                return false;
            }
        }
    }
    for l in &inst.lags {
        let gap = start[l.job][l.to_op] - (start[l.job][l.from_op] + p[l.job][l.from_op]);
        if gap < l.min_lag {
            return false;
        }
        if let MaxLag::Finite(max) = l.max_lag {
            if gap > max {
                return false;
            }
        }
    }
    true
}

/// Every feasible integer start matrix with all starts in `0..=horizon`.
pub fn feasible_schedules(inst: &Instance, orders: &[Vec<usize>], horizon: Time) -> Vec<Vec<Vec<Time>>> {
    let n = inst.jobs();
    let m = inst.machines;
    let cells = n * m;
    let mut flat = vec![0 as Time; cells];
    let mut out = Vec::new();
    loop {
        let start: Vec<Vec<Time>> = flat.chunks(m).map(|c| c.to_vec()).collect();
        if feasible(inst, orders, &start) {
            out.push(start);
        }
        let mut k = cells;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if flat[k] < horizon {
                flat[k] += 1;
                break;
            }
            flat[k] = 0;
        }
    }
}

/// Component-wise minimum of a nonempty set of start matrices.
pub fn componentwise_min(set: &[Vec<Vec<Time>>]) -> Vec<Vec<Time>> {
    let mut min = set[0].clone();
    for s in set {
        for (row, srow) in min.iter_mut().zip(s) {
            for (a, b) in row.iter_mut().zip(srow) {
                *a = (*a).min(*b);
            }
        }
    }
    min
}

/// All permutations of `0..n` by recursive insertion (deliberately not lexicographic generation).
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for smaller in all_permutations(n - 1) {
        for pos in 0..=smaller.len() {
            let mut p = smaller.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Longest forward path (processing and minimal lags) from the start of op `from` to the start of op `to`,
/// by enumerating all paths.
pub fn longest_forward_path(inst: &Instance, job: usize, from: usize, to: usize) -> Option<Time> {
    if from == to {
        return Some(0);
    }
    let p = &inst.processing[job];
    let mut best: Option<Time> = None;
    let mut consider = |next: usize, w: Time| {
        if next <= to {
            if let Some(rest) = longest_forward_path(inst, job, next, to) {
                best = Some(best.map_or(w + rest, |b: Time| b.max(w + rest)));
            }
        }
    };
    consider(from + 1, p[from]);
    for l in inst.lags.iter().filter(|l| l.job == job && l.from_op == from) {
        consider(l.to_op, p[from] + l.min_lag);
    }
    best
}

/// True iff some cycle of the job's own constraint system has positive weight, found by enumerating simple
/// cycles over the job's operations with a plain DFS.
pub fn job_has_positive_cycle(inst: &Instance, job: usize) -> bool {
    let m = inst.machines;
    let p = &inst.processing[job];
    let mut arcs: Vec<(usize, usize, Time)> = (0..m.saturating_sub(1)).map(|j| (j, j + 1, p[j])).collect();
    for l in inst.lags.iter().filter(|l| l.job == job) {
        arcs.push((l.from_op, l.to_op, p[l.from_op] + l.min_lag));
        if let MaxLag::Finite(max) = l.max_lag {
            arcs.push((l.to_op, l.from_op, -(p[l.from_op] + max)));
        }
    }
    fn dfs(arcs: &[(usize, usize, Time)], root: usize, at: usize, weight: Time, seen: &mut Vec<bool>) -> bool {
        for &(_, b, w) in arcs.iter().filter(|arc| arc.0 == at) {
            if b == root && weight + w > 0 {
                return true;
            }
            if b > root && !seen[b] {
                seen[b] = true;
                if dfs(arcs, root, b, weight + w, seen) {
                    return true;
                }
                seen[b] = false;
            }
        }
        false
    }
    (0..m).any(|root| dfs(&arcs, root, root, 0, &mut vec![false; m]))
}

/// Makespan of a two-machine schedule with fixed orders, greedy earliest starts, minimal lags only.
pub fn f2_greedy_makespan(inst: &Instance, m1: &[usize], m2: &[usize]) -> Time {
    let n = inst.jobs();
    let mut lag = vec![0; n];
    for l in &inst.lags {
        lag[l.job] = l.min_lag;
    }
    let mut c1 = vec![0; n];
    let mut t = 0;
    for &j in m1 {
        t = t.max(inst.release.as_ref().map_or(0, |r| r[j])) + inst.processing[j][0];
        c1[j] = t;
    }
    let mut t = 0;
    for &j in m2 {
        t = t.max(c1[j] + lag[j]) + inst.processing[j][1];
    }
    t
}

/// Seeded random instances for property runs.
pub fn random_instances(count: u64, base_seed: u64, mut shape: impl FnMut(u64) -> GeneratorParams) -> Vec<Instance> {
    (0..count).map(|k| generate(&GeneratorParams { seed: base_seed.wrapping_add(k), ..shape(k) }).unwrap()).collect()
}
