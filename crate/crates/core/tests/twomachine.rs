mod common;

use common::{all_permutations, f2_greedy_makespan, random_instances};
use flowlag_core::generate::GeneratorParams;
use flowlag_core::model::{evaluate_criterion, validate_schedule, Criterion, Time};
use flowlag_core::timing::least_schedule;
use flowlag_core::twomachine::f2_minlag_given_m1;
use rand::seq::SliceRandom;
use rand::SeedableRng;

#[test]
fn earliest_availability_is_optimal_for_machine_two() {
    let shape = |k: u64| GeneratorParams {
        jobs: 1 + (k % 6) as usize,
        machines: 2,
        lag_density: 0.7,
        unbounded_probability: 1.0,
        processing: (1, 30),
        min_lag: (0, 40),
        release: if k.is_multiple_of(2) { Some((0, 30)) } else { None },
        ..Default::default()
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for inst in random_instances(120, 600, shape) {
        let mut m1: Vec<usize> = (0..inst.jobs()).collect();
        m1.shuffle(&mut rng);
        let (orders, sched) = f2_minlag_given_m1(&inst, &m1).unwrap();
        let value = evaluate_criterion(&inst, &sched, Criterion::Makespan).unwrap();
        let best: Time = all_permutations(inst.jobs()).iter().map(|m2| f2_greedy_makespan(&inst, &m1, m2)).min().unwrap();
        assert_eq!(value, best);
        assert!(validate_schedule(&inst, &orders, &sched).is_empty());
        let least = least_schedule(&inst, &orders).unwrap();
        assert_eq!(evaluate_criterion(&inst, &least, Criterion::Makespan), Ok(value));
    }
}
