//! Exact distribution of a tagged particle on a flat ring, computed three
//! ways: the Fredholm formula, the general N x N determinant, and the
//! uniformized generator.

use periodic_tasep::finite_time::{
    generator_oracle, one_point_flat_grid, one_point_general_auto, Configuration, FredholmOptions,
};
use periodic_tasep::quadrature::QuadratureSpec;

fn main() -> periodic_tasep::Result<()> {
    let (d, n, k, t) = (2, 4, 2, 1.5);
    let y = Configuration::flat(d, n)?;
    let quad = QuadratureSpec::default();
    let thresholds: Vec<i64> = (4..=10).collect();

    let fredholm =
        one_point_flat_grid(d, n, k, &thresholds, t, &quad, &FredholmOptions::default())?;
    // the root sums pick a contour radius per threshold
    let general = one_point_general_auto(&y, k, &thresholds, t, 128)?;
    let oracle = generator_oracle(&y, t)?;

    println!("P(x_{k}(t) >= a) on L={} N={n}, t={t}", d * n);
    println!(
        "{:>3} {:>20} {:>20} {:>20}",
        "a", "fredholm", "general", "generator"
    );
    for (i, &a) in thresholds.iter().enumerate() {
        let brute: f64 = oracle
            .iter()
            .filter(|(x, _)| x[k - 1] >= a)
            .map(|(_, p)| p)
            .sum();
        println!(
            "{a:>3} {:>20.15} {:>20.15} {:>20.15}",
            fredholm[i].value, general[i].value, brute
        );
    }
    Ok(())
}
