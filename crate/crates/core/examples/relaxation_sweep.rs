//! Distance between the scaled exact distribution on rings of growing size
//! and the limit F1, for flat data with d = 2 at tau = 1.

use periodic_tasep::harness::{converge_sweep, SweepFamily, SweepSpec};
use periodic_tasep::quadrature::QuadratureSpec;

fn main() -> periodic_tasep::Result<()> {
    let spec = SweepSpec {
        family: SweepFamily::Flat { d: 2 },
        sizes: vec![16, 32, 64, 128],
        tau: 1.0,
        xs: (-6..=6).map(|i| i as f64 * 0.5).collect(),
        finite_quad: QuadratureSpec::new(128, 0.9)?,
        limit_quad: QuadratureSpec::default(),
    };
    println!("{:>5} {:>5} {:>12} {:>12}", "L", "N", "t", "sup dist");
    for row in converge_sweep(&spec)? {
        println!(
            "{:>5} {:>5} {:>12.3} {:>12.6}",
            row.l, row.n, row.t, row.sup_distance
        );
    }
    Ok(())
}
