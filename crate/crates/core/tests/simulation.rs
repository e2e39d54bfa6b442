use periodic_tasep::finite_time::{one_point_flat_grid, one_point_step_grid, FredholmOptions};
use periodic_tasep::quadrature::QuadratureSpec;
use periodic_tasep::ring_bethe::SystemShape;
use periodic_tasep::tasep_sim::*;

fn config(samples: usize, threads: Option<usize>) -> SimConfig {
    SimConfig {
        seed: 2024,
        samples,
        threads,
    }
}

fn poisson_tail(t: f64, j: i64) -> f64 {
    let mut term = (-t).exp();
    let mut below = 0.0;
    for i in 0..j.max(0) {
        below += term;
        term *= t / (i + 1) as f64;
    }
    1.0 - below
}

#[test]
fn single_particle_jumps_are_poisson() {
    let shape = SystemShape::new(3, 1).unwrap();
    let t = 2.5;
    let n = 10_000;
    let jumps = ensemble_map(InitialCondition::Step, shape, t, &config(n, None), |s| {
        Ok(s.tagged_displacement(1))
    })
    .unwrap();
    let mean = jumps.iter().sum::<i64>() as f64 / n as f64;
    assert!(
        (mean - t).abs() < 3.0 * (t / n as f64).sqrt(),
        "mean {mean}"
    );

    let thresholds: Vec<i64> = (0..=7).collect();
    for row in tail_table(&jumps, &thresholds) {
        let p = poisson_tail(t, row.threshold);
        let sd = (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (row.prob - p).abs() <= 4.0 * sd + 1e-12,
            "a={}: {} vs {p}",
            row.threshold,
            row.prob
        );
    }
}

#[test]
fn ensembles_do_not_depend_on_thread_count() {
    let shape = SystemShape::new(12, 6).unwrap();
    let thresholds: Vec<i64> = (0..10).collect();
    let run = |threads| {
        ensemble_cdf(
            InitialCondition::Flat { d: 2 },
            shape,
            3.0,
            Observable::Current(2),
            &thresholds,
            &config(2000, threads),
        )
        .unwrap()
    };
    let one = run(Some(1));
    let four = run(Some(4));
    let global = run(None);
    assert_eq!(one, four);
    assert_eq!(one, global);
    let bits = |rows: &[EmpiricalRow]| {
        rows.iter()
            .map(|r| (r.prob.to_bits(), r.ci_low.to_bits(), r.ci_high.to_bits()))
            .collect::<Vec<_>>()
    };
    assert_eq!(bits(&one), bits(&four));
}

#[test]
fn flat_ring_matches_the_exact_distribution() {
    let (d, n, k, t) = (2, 3, 2, 1.5);
    let shape = SystemShape::flat(d, n).unwrap();
    let thresholds: Vec<i64> = (3..=10).collect();
    let exact = one_point_flat_grid(
        d,
        n,
        k,
        &thresholds,
        t,
        &QuadratureSpec::default(),
        &FredholmOptions::default(),
    )
    .unwrap();
    let empirical = ensemble_cdf(
        InitialCondition::Flat { d },
        shape,
        t,
        Observable::Tagged(k),
        &thresholds,
        &config(10_000, None),
    )
    .unwrap();
    let ks = exact
        .iter()
        .zip(&empirical)
        .map(|(e, s)| (e.value - s.prob).abs())
        .fold(0.0, f64::max);
    assert!(ks <= 0.02, "KS {ks}");
}

#[test]
fn step_ring_matches_the_exact_distribution() {
    let (l, n, k, t) = (8, 4, 2, 2.0);
    let shape = SystemShape::new(l, n).unwrap();
    let thresholds: Vec<i64> = (-3..=6).collect();
    let exact = one_point_step_grid(
        l,
        n,
        k,
        &thresholds,
        t,
        &QuadratureSpec::default(),
        &FredholmOptions::default(),
    )
    .unwrap();
    let empirical = ensemble_cdf(
        InitialCondition::Step,
        shape,
        t,
        Observable::Tagged(k),
        &thresholds,
        &config(10_000, None),
    )
    .unwrap();
    for (e, s) in exact.iter().zip(&empirical) {
        assert!((e.value - s.prob).abs() <= 0.02);
    }
}

#[test]
fn duality_and_sum_rule_hold_on_every_trajectory() {
    for (ic, shape, t) in [
        (
            InitialCondition::Flat { d: 2 },
            SystemShape::new(10, 5).unwrap(),
            6.0,
        ),
        (
            InitialCondition::Flat { d: 3 },
            SystemShape::new(9, 3).unwrap(),
            4.0,
        ),
        (InitialCondition::Step, SystemShape::new(9, 4).unwrap(), 8.0),
        (InitialCondition::Step, SystemShape::new(7, 1).unwrap(), 5.0),
    ] {
        let checks = ensemble_map(ic, shape, t, &config(1000, None), |s| {
            s.check_invariants()?;
            let l = shape.l() as i64;
            let n = shape.n() as i64;
            let bonds: u64 = (-n + 1..=l - n)
                .map(|m| s.current(m))
                .sum::<periodic_tasep::Result<u64>>()?;
            let displacement: i64 = (1..=shape.n()).map(|k| s.tagged_displacement(k)).sum();
            let jumps: u64 = s.jump_counts().iter().sum();
            Ok((
                s.duality_violations(),
                bonds,
                displacement,
                jumps,
                s.events(),
            ))
        })
        .unwrap();
        for (violations, bonds, displacement, jumps, events) in checks {
            assert_eq!(violations, 0);
            assert_eq!(bonds, events);
            assert_eq!(jumps, events);
            assert_eq!(displacement as u64, events);
        }
    }
}

#[test]
fn state_at_time_zero() {
    let shape = SystemShape::new(6, 3).unwrap();
    let vals = ensemble_map(
        InitialCondition::Flat { d: 2 },
        shape,
        0.0,
        &config(10, None),
        |s| {
            Ok((
                s.tagged_displacement(2),
                s.current(0)?,
                s.occupancy().iter().filter(|&&o| o).count(),
            ))
        },
    )
    .unwrap();
    assert!(vals.iter().all(|&v| v == (0, 0, 3)));
}

#[test]
fn too_few_samples_rejected() {
    let shape = SystemShape::new(4, 2).unwrap();
    assert!(ensemble_cdf(
        InitialCondition::Step,
        shape,
        1.0,
        Observable::Tagged(1),
        &[0],
        &config(50, None)
    )
    .is_err());
}
