//! Solves w^N (w+1)^(L-N) = z^L on a small ring and prints both root families.
//!
//! cargo run --release --example bethe_roots -- 12 4 0.3 0.2

use num_complex::Complex64;
use periodic_tasep::ring_bethe::{solve_bethe_roots, SystemShape};

fn main() -> periodic_tasep::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let arg = |i: usize, default: f64| args.get(i).copied().unwrap_or(default);
    let shape = SystemShape::new(arg(0, 12.0) as usize, arg(1, 4.0) as usize)?;
    let zhat = Complex64::new(arg(2, 0.3), arg(3, 0.2));
    let roots = solve_bethe_roots(&shape, zhat)?;

    println!(
        "L={} N={} rho={} zhat={zhat}",
        shape.l(),
        shape.n(),
        shape.rho()
    );
    for (name, set) in [("left", &roots.left), ("right", &roots.right)] {
        println!("{name} ({} roots):", set.len());
        for w in set {
            println!("  {:+.12} {:+.12}i", w.re, w.im);
        }
    }
    println!(
        "max residual {:.2e}, min separation {:.3e}",
        roots.residual,
        roots.separation()
    );
    Ok(())
}
