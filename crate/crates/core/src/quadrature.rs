//! Trapezoidal contour sums on circles and adaptive Gauss-Kronrod on segments.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Equispaced trapezoid rule on the circle `|zhat| = radius`.
///
/// Any radius off the unit circle is accepted here; formulas that split the
/// roots into two families additionally need [`QuadratureSpec::require_unit_disk`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub radius: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes: 128,
            radius: 0.5,
        }
    }
}

impl QuadratureSpec {
    pub fn new(nodes: usize, radius: f64) -> Result<Self> {
        let q = Self { nodes, radius };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 8 || !self.nodes.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "quadrature node count must be even and >= 8, got {}",
                self.nodes
            )));
        }
        if !(self.radius > 0.0 && self.radius.is_finite() && self.radius != 1.0) {
            return Err(Error::DegenerateZ(self.radius));
        }
        Ok(())
    }

    pub fn require_unit_disk(&self) -> Result<()> {
        self.validate()?;
        if self.radius > 1.0 {
            return Err(Error::DegenerateZ(self.radius));
        }
        Ok(())
    }

    pub fn doubled(&self) -> Self {
        Self {
            nodes: 2 * self.nodes,
            radius: self.radius,
        }
    }

    /// Nodes `radius * exp(2 pi i j / M)`, ascending in angle. The node set
    /// for `2M` contains the node set for `M` at even indices.
    pub fn points(&self) -> Vec<Complex64> {
        (0..self.nodes)
            .map(|j| Complex64::from_polar(self.radius, 2.0 * PI * j as f64 / self.nodes as f64))
            .collect()
    }
}

/// Evaluates `f` at every contour node (in parallel, order preserved).
pub fn evaluate_nodes<T, F>(spec: &QuadratureSpec, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Complex64) -> Result<T> + Sync + Send,
{
    spec.points().into_par_iter().map(f).collect()
}

/// Mean of a sequence of complex values, summed in index order.
pub fn ordered_mean(values: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for v in values {
        acc += v;
    }
    acc / values.len() as f64
}

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let kron = kron * h;
    let gauss = gauss * h;
    (kron, (kron - gauss).norm())
}

const MAX_PANELS: usize = 20_000;
const ROUNDOFF: f64 = 2e-15;

/// Adaptive Gauss-Kronrod integration of a complex-valued function over
/// `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    let mut stack = vec![(a, b, 0u32)];
    let mut budget = MAX_PANELS;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err) = gk15(&f, lo, hi);
        budget = budget.saturating_sub(1);
        let local_tol = tol * (hi - lo) / (b - a).abs().max(f64::MIN_POSITIVE);
        // accept at the round-off floor of the panel, or once the panel budget is spent
        if err <= local_tol.max(ROUNDOFF * val.norm()) || depth >= 40 || budget == 0 {
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    total
}
