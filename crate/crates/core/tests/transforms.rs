mod common;

use std::collections::BTreeSet;

use common::{all_permutations, random_instances};
use flowlag_core::generate::GeneratorParams;
use flowlag_core::model::{evaluate_criterion, validate_instance, validate_schedule, Criterion, Instance,
    MachineOrders, Time};
use flowlag_core::timing::{job_feasible, least_schedule};
use flowlag_core::transforms::{embed_release_dates, embed_tails, lmax_to_cmax, project_schedule};

fn with_dates(k: u64) -> GeneratorParams {
    GeneratorParams {
        jobs: 1 + (k % 5) as usize,
        machines: 1 + (k / 5 % 3) as usize,
        processing: (1, 30),
        min_lag: (0, 20),
        max_lag_extra: (0, 20),
        arbitrary_lags: k.is_multiple_of(4),
        release: Some((0, 40)),
        due: Some((0, 120)),
        ..Default::default()
    }
}

fn cmax(inst: &Instance, perm: &[usize]) -> Option<Time> {
    let s = least_schedule(inst, &MachineOrders::from_permutation(perm, inst.machines)).ok()?;
    Some(evaluate_criterion(inst, &s, Criterion::Makespan).unwrap())
}

#[test]
fn release_embedding_preserves_makespan() {
    for inst in random_instances(60, 7, with_dates) {
        let t = embed_release_dates(&inst).unwrap();
        assert!(validate_instance(&t.inst).is_empty());
        for perm in all_permutations(inst.jobs()) {
            assert_eq!(cmax(&t.inst, &perm), cmax(&inst, &perm));
        }
    }
}

#[test]
fn zero_releases_change_nothing() {
    for mut inst in random_instances(30, 70, with_dates) {
        inst.release = Some(vec![0; inst.jobs()]);
        let t = embed_release_dates(&inst).unwrap();
        inst.release = None;
        for perm in all_permutations(inst.jobs()) {
            assert_eq!(cmax(&t.inst, &perm), cmax(&inst, &perm));
        }
    }
}

#[test]
fn tails_add_to_completions() {
    for (k, inst) in random_instances(60, 17, with_dates).into_iter().enumerate() {
        let q: Vec<Time> = (0..inst.jobs()).map(|j| ((j * 7 + k * 3) % 11) as Time).collect();
        let t = embed_tails(&inst, &q).unwrap();
        let zero = embed_tails(&inst, &vec![0; inst.jobs()]).unwrap();
        for perm in all_permutations(inst.jobs()) {
            let orders = MachineOrders::from_permutation(&perm, inst.machines);
            let expected = least_schedule(&inst, &orders).ok().map(|s| {
                s.job_completions(&inst).iter().zip(&q).map(|(c, q)| c + q).max().unwrap()
            });
            assert_eq!(cmax(&t.inst, &perm), expected);
            assert_eq!(cmax(&zero.inst, &perm), cmax(&inst, &perm));
        }
    }
}

#[test]
fn lateness_reduction_is_exact() {
    for inst in random_instances(60, 27, with_dates) {
        let t = lmax_to_cmax(&inst).unwrap();
        assert_eq!(t.offset, *inst.due.as_ref().unwrap().iter().max().unwrap());
        let mut lmax_values = Vec::new();
        let mut cmax_values = Vec::new();
        for perm in all_permutations(inst.jobs()) {
            let orders = MachineOrders::from_permutation(&perm, inst.machines);
            let lmax = least_schedule(&inst, &orders)
                .ok()
                .map(|s| evaluate_criterion(&inst, &s, Criterion::MaxLateness).unwrap());
            let shifted = cmax(&t.inst, &perm).map(|c| c - t.offset);
            assert_eq!(shifted, lmax);
            lmax_values.push((perm.clone(), lmax));
            cmax_values.push((perm, shifted));
        }
        let argmin = |vals: &[(Vec<usize>, Option<Time>)]| -> BTreeSet<Vec<usize>> {
            let best = vals.iter().filter_map(|v| v.1).min();
            vals.iter().filter(|v| v.1.is_some() && v.1 == best).map(|v| v.0.clone()).collect()
        };
        assert_eq!(argmin(&lmax_values), argmin(&cmax_values));
    }
}

#[test]
fn equal_due_dates_reduce_to_plain_makespan() {
    for mut inst in random_instances(20, 37, with_dates) {
        inst.due = Some(vec![50; inst.jobs()]);
        let t = lmax_to_cmax(&inst).unwrap();
        assert_eq!(t.offset, 50);
        for perm in all_permutations(inst.jobs()) {
            assert_eq!(cmax(&t.inst, &perm), cmax(&inst, &perm));
        }
    }
}

#[test]
fn projected_schedules_validate() {
    for inst in random_instances(80, 47, with_dates) {
        if (0..inst.jobs()).any(|j| !job_feasible(&inst, j)) {
            continue;
        }
        let perm: Vec<usize> = (0..inst.jobs()).collect();
        let orders = MachineOrders::from_permutation(&perm, inst.machines);
        for t in [embed_release_dates(&inst).unwrap(), lmax_to_cmax(&inst).unwrap()] {
            let s = least_schedule(&t.inst, &MachineOrders::from_permutation(&perm, t.inst.machines)).unwrap();
            let projected = project_schedule(&t, &s).unwrap();
            assert!(validate_schedule(&inst, &orders, &projected).is_empty());
            assert_eq!(projected, least_schedule(&inst, &orders).unwrap());
        }
    }
}

#[test]
fn feasibility_is_unchanged_by_embedding() {
    let shape = |k: u64| GeneratorParams { arbitrary_lags: true, lag_density: 0.8, ..with_dates(k) };
    for inst in random_instances(100, 57, shape) {
        let bad = (0..inst.jobs()).any(|j| !job_feasible(&inst, j));
        for t in [embed_release_dates(&inst).unwrap(), lmax_to_cmax(&inst).unwrap()] {
            assert_eq!((0..t.inst.jobs()).any(|j| !job_feasible(&t.inst, j)), bad);
        }
    }
}
