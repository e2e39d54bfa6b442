//! F1(tau^(1/3) x; tau) at small tau next to F_GOE(2^(2/3) x), printed as plot data.

use periodic_tasep::limit_dist::{f1_grid, ReferenceCurve, DEFAULT_NODE_COUNT};
use periodic_tasep::quadrature::QuadratureSpec;

fn main() -> periodic_tasep::Result<()> {
    let xs: Vec<f64> = (-12..=6).map(|i| i as f64 * 0.25).collect();
    let quad = QuadratureSpec::default();
    println!("{:>6} {:>12} {:>12} {:>12}", "x", "tau=1", "tau=0.1", "goe");
    let curves = [1.0, 0.1]
        .iter()
        .map(|&tau: &f64| {
            let scaled: Vec<f64> = xs.iter().map(|x| tau.cbrt() * x).collect();
            f1_grid(&scaled, tau, &quad, DEFAULT_NODE_COUNT)
        })
        .collect::<periodic_tasep::Result<Vec<_>>>()?;
    for (i, &x) in xs.iter().enumerate() {
        println!(
            "{x:>6.2} {:>12.6} {:>12.6} {:>12.6}",
            curves[0].points[i].value,
            curves[1].points[i].value,
            ReferenceCurve::Goe.value(x)
        );
    }
    Ok(())
}
