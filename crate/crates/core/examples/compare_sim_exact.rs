//! Simulated versus exact tagged-particle distribution on a flat ring of 32
//! sites at the relaxation time scale tau = 1.

use periodic_tasep::finite_time::{flat_scaling, one_point_flat_grid, FredholmOptions};
use periodic_tasep::harness::compare_curves;
use periodic_tasep::quadrature::QuadratureSpec;
use periodic_tasep::ring_bethe::SystemShape;
use periodic_tasep::tasep_sim::{ensemble_cdf, InitialCondition, Observable, SimConfig};

fn main() -> periodic_tasep::Result<()> {
    let (d, n) = (2, 16);
    let shape = SystemShape::flat(d, n)?;
    let k = n;
    let t = flat_scaling(1.0, 0.0, k, &shape)?.t;
    let lo = flat_scaling(1.0, 4.0, k, &shape)?.a;
    let hi = flat_scaling(1.0, -4.0, k, &shape)?.a;
    let thresholds: Vec<i64> = (lo..=hi).collect();

    let quad = QuadratureSpec::new(128, 0.9)?;
    let exact = one_point_flat_grid(d, n, k, &thresholds, t, &quad, &FredholmOptions::default())?;
    let config = SimConfig {
        seed: 11,
        samples: 5000,
        threads: None,
    };
    let sim = ensemble_cdf(
        InitialCondition::Flat { d },
        shape,
        t,
        Observable::Tagged(k),
        &thresholds,
        &config,
    )?;

    let a: Vec<(f64, f64)> = thresholds
        .iter()
        .zip(&exact)
        .map(|(&a, r)| (a as f64, r.value))
        .collect();
    let b: Vec<(f64, f64)> = sim.iter().map(|r| (r.threshold as f64, r.prob)).collect();
    let report = compare_curves(&a, &b, 0.03)?;
    println!("t = {t:.3}, thresholds {lo}..={hi}");
    println!(
        "KS distance {:.4} over {} points: {}",
        report.ks_statistic,
        report.n_points,
        if report.pass { "PASS" } else { "FAIL" }
    );
    Ok(())
}
