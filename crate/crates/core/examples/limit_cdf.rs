//! Tabulates F1(x; tau) and F2(x; tau, gamma) with their diagnostics.

use periodic_tasep::limit_dist::{f1_grid, f2_grid, DEFAULT_NODE_COUNT};
use periodic_tasep::quadrature::QuadratureSpec;

fn main() -> periodic_tasep::Result<()> {
    let tau = 1.0;
    let gamma = 0.2;
    let xs: Vec<f64> = (-8..=8).map(|i| i as f64 * 0.5).collect();
    let quad = QuadratureSpec::default();
    let flat = f1_grid(&xs, tau, &quad, DEFAULT_NODE_COUNT)?;
    let step = f2_grid(&xs, tau, gamma, &quad, DEFAULT_NODE_COUNT)?;

    println!("{:>6} {:>16} {:>16} {:>9}", "x", "F1", "F2", "|Im|");
    for (a, b) in flat.points.iter().zip(&step.points) {
        println!(
            "{:>6.2} {:>16.12} {:>16.12} {:>9.1e}",
            a.x,
            a.value,
            b.value,
            a.imag_residue.max(b.imag_residue)
        );
    }
    let p = flat.points[0];
    println!(
        "node half-count {}, contour nodes {}",
        p.m_used, p.nodes_used
    );
    Ok(())
}
