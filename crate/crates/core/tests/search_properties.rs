use std::sync::{Arc, Mutex};

use cuckoo_core::{
    abandon_fraction, corpus, cuckoo_search, hill_climb_restart, initialize, local_walk,
    rng_from_seed, select_partners, AlgorithmParams, Bounds, HillClimbParams, PenaltyConfig,
    Problem, StepScale, StopCriterion,
};
use proptest::prelude::*;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Wraps a problem so every evaluated position is logged.
fn recording(problem: Problem) -> (Problem, Arc<Mutex<Vec<Vec<f64>>>>) {
    let log = Arc::new(Mutex::new(Vec::new()));
    let sink = Arc::clone(&log);
    let p = problem.map_objective(move |f| {
        move |x: &[f64]| {
            sink.lock().unwrap().push(x.to_vec());
            f(x)
        }
    });
    (p, log)
}

fn pick_problem(idx: usize, d: usize) -> Problem {
    corpus::lookup(corpus::NAMES[idx], Some(d)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cuckoo_runs_are_elitist_bounded_and_audited(
        idx in 0usize..corpus::NAMES.len(),
        d in 2usize..6,
        seed in any::<u64>(),
        nests in 3usize..20,
        pa in prop::sample::select(vec![0.0, 0.1, 0.25, 0.5, 1.0]),
        frac in 0.001f64..0.5,
        budget in 50u64..3000,
    ) {
        let (problem, log) = recording(pick_problem(idx, d));
        let params = AlgorithmParams {
            nests,
            discovery_probability: pa,
            alpha: StepScale::RangeFraction(frac),
            stop: StopCriterion::budget(budget),
            ..AlgorithmParams::default()
        };
        let r = cuckoo_search(&problem, &params, seed).unwrap();

        prop_assert!(r.history.windows(2).all(|w| w[1].best_objective <= w[0].best_objective));
        prop_assert_eq!(r.best_objective, r.history.last().unwrap().best_objective);
        prop_assert!(r.history.windows(2).all(|w| w[1].evaluations >= w[0].evaluations));

        let seen = log.lock().unwrap();
        prop_assert_eq!(seen.len() as u64, r.evaluations);
        prop_assert!(seen.iter().all(|x| problem.contains(x)));
        let allowance = (nests + params.abandon_count()) as u64;
        prop_assert!(r.evaluations <= budget.max(nests as u64) + allowance);
    }

    #[test]
    fn hill_climb_runs_are_elitist_bounded_and_audited(
        idx in 0usize..corpus::NAMES.len(),
        d in 2usize..6,
        seed in any::<u64>(),
        budget in 1u64..3000,
    ) {
        let (problem, log) = recording(pick_problem(idx, d));
        let params = HillClimbParams { stop: StopCriterion::budget(budget), ..Default::default() };
        let r = hill_climb_restart(&problem, &params, seed).unwrap();
        prop_assert!(r.history.windows(2).all(|w| w[1].best_objective <= w[0].best_objective));
        let seen = log.lock().unwrap();
        prop_assert_eq!(seen.len() as u64, r.evaluations);
        prop_assert_eq!(r.evaluations, budget);
        prop_assert!(seen.iter().all(|x| problem.contains(x)));
    }

    #[test]
    fn abandonment_contract(
        n in 3usize..=50,
        pa in prop::sample::select(vec![(0u32, 1u32), (1, 10), (1, 4), (1, 2), (1, 1)]),
        seed in any::<u64>(),
    ) {
        let problem = corpus::sphere(3).unwrap();
        let params = AlgorithmParams {
            nests: n,
            discovery_probability: pa.0 as f64 / pa.1 as f64,
            ..AlgorithmParams::default()
        };
        let expected = ((pa.0 as usize) * n).div_ceil(pa.1 as usize);
        let mut rng = rng_from_seed(seed);
        let mut pop = initialize(&problem, &params, &mut rng).unwrap();
        let before = pop.clone();
        let replaced = abandon_fraction(&mut pop, &problem, &params, &mut rng).unwrap();
        prop_assert_eq!(replaced.len(), expected);
        prop_assert_eq!(&pop.best, &before.best);
        prop_assert_eq!(pop.evaluations, before.evaluations + expected as u64);

        let mut worst: Vec<f64> = before.nests.iter().map(|x| x.objective).collect();
        worst.sort_by(|a, b| b.total_cmp(a));
        let mut got: Vec<f64> = replaced.iter().map(|&i| before.nests[i].objective).collect();
        got.sort_by(|a, b| b.total_cmp(a));
        prop_assert_eq!(got, worst[..expected].to_vec());
    }

    #[test]
    fn penalty_grows_with_violation(
        raw in -10.0f64..10.0,
        v1 in 0.0f64..5.0,
        extra in 0.01f64..5.0,
        which in 0usize..2,
    ) {
        let base = Problem::new("m", vec![Bounds::new(-100.0, 100.0); 2], move |_| raw)
            .unwrap()
            .with_inequality(|x| x[0])
            .with_equality(|x| x[1])
            .with_penalty(PenaltyConfig { penalty_weight: 10.0, eq_tolerance: 1e-4 })
            .unwrap();
        let mut a = [-1.0, 0.0];
        a[which] = v1;
        let mut b = a;
        b[which] += extra;
        let ea = base.evaluate(&a).unwrap();
        let eb = base.evaluate(&b).unwrap();
        prop_assert!(eb.objective > ea.objective);
        if ea.feasible {
            prop_assert_eq!(ea.objective, raw);
        }
    }
}

#[test]
fn gate_opens_a_quarter_of_components() {
    let bounds = vec![Bounds::new(-10.0, 10.0); 10];
    let params = AlgorithmParams {
        discovery_probability: 0.25,
        ..AlgorithmParams::default()
    };
    let xi = [0.0; 10];
    let xj = [1.0; 10];
    let xk = [-1.0; 10];
    let mut rng = rng_from_seed(17);
    let mut open = 0usize;
    for _ in 0..10_000 {
        let c = local_walk(&xi, &xj, &xk, &bounds, &params, &mut rng).unwrap();
        open += c.iter().filter(|&&v| v != 0.0).count();
    }
    let frac = open as f64 / 100_000.0;
    assert!((frac - 0.25).abs() <= 0.01, "{frac}");
}

#[test]
fn partners_are_uniform_over_ordered_pairs() {
    let n = 6;
    let i = 2;
    let mut counts = std::collections::HashMap::new();
    let mut rng = rng_from_seed(123);
    let draws = 100_000;
    for _ in 0..draws {
        *counts
            .entry(select_partners(i, n, &mut rng))
            .or_insert(0usize) += 1;
    }
    let cells = (n - 1) * (n - 2);
    assert_eq!(counts.len(), cells);
    let expected = draws as f64 / cells as f64;
    let chi2: f64 = counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let p = 1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(chi2);
    assert!(p > 0.001, "chi2 = {chi2}, p = {p}");
}

#[test]
fn evaluation_is_pure() {
    let mut rng = rng_from_seed(8);
    for p in corpus::corpus(7).unwrap() {
        let x: Vec<f64> = p
            .bounds()
            .iter()
            .map(|b| b.lower + rng.gen::<f64>() * b.width())
            .collect();
        let first = p.evaluate(&x).unwrap();
        for _ in 0..1000 {
            let again = p.evaluate(&x).unwrap();
            assert_eq!(again.objective.to_bits(), first.objective.to_bits());
            assert_eq!(again.feasible, first.feasible);
        }
    }
}
