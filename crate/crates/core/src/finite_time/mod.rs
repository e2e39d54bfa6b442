//! Exact finite-time probabilities for TASEP on a ring of `L` sites.
//!
//! Every contour integral is written in the rescaled variable `zhat` (see
//! [`crate::ring_bethe`]) and evaluated by the trapezoid rule on
//! `|zhat| = r`, doubling the node count until successive sums agree.

mod fredholm;
mod general;
mod oracle;
mod scaling;

pub use fredholm::{
    one_point_flat, one_point_flat_grid, one_point_step, one_point_step_grid, FredholmOptions,
};
pub use general::{
    auto_radii, auto_radius_candidates, one_point_general, one_point_general_auto,
    one_point_general_grid, transition_probability, SMALL_RING_MAX,
};
pub use oracle::{generator_oracle, poisson_truncation, ORACLE_MAX_STATES};
pub use scaling::{
    current_from_tagged, duality_threshold, flat_scaling, step_scaling, FlatScaling, StepScaling,
};

use crate::error::{Error, Result};
use crate::quadrature::{ordered_mean, QuadratureSpec};
use crate::ring_bethe::SystemShape;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Target change between successive node doublings.
pub const QUAD_TOL: f64 = 1e-9;
/// A final doubling change above this is reported as divergence.
pub const QUAD_FAIL: f64 = 1e-6;
/// Upper bound on the number of trapezoid nodes.
pub const MAX_QUAD_NODES: usize = 2048;
/// Default `|zhat|` for transition probabilities.
///
/// The root-sum integrands are analytic on the whole punctured plane and
/// shrink as the contour grows, so far tails stay resolvable; the Fredholm
/// formulas need `|zhat| < 1`. One-point grids spanning more than a lap need
/// a radius per threshold, see [`one_point_general_auto`].
pub const OUTER_RADIUS: f64 = 100.0;

/// Particle positions `x_1 < ... < x_N < x_1 + L` on the lifted ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    shape: SystemShape,
    positions: Vec<i64>,
}

impl Configuration {
    pub fn new(shape: SystemShape, positions: Vec<i64>) -> Result<Self> {
        if positions.len() != shape.n() {
            return Err(Error::InvalidConfiguration(format!(
                "expected {} positions, got {}",
                shape.n(),
                positions.len()
            )));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfiguration(
                "positions must be strictly increasing".into(),
            ));
        }
        if positions[shape.n() - 1] >= positions[0] + shape.l() as i64 {
            return Err(Error::InvalidConfiguration(format!(
                "x_N = {} must be below x_1 + L = {}",
                positions[shape.n() - 1],
                positions[0] + shape.l() as i64
            )));
        }
        Ok(Self { shape, positions })
    }

    /// `x_j = j d` for `L = d N`.
    pub fn flat(d: usize, n: usize) -> Result<Self> {
        let shape = SystemShape::flat(d, n)?;
        Self::new(shape, (1..=n as i64).map(|j| j * d as i64).collect())
    }

    /// `x_j = j - N`, i.e. the particles packed on `-N+1, ..., 0`.
    pub fn step(shape: SystemShape) -> Self {
        let n = shape.n() as i64;
        Self {
            shape,
            positions: (1..=n).map(|j| j - n).collect(),
        }
    }

    pub fn shape(&self) -> SystemShape {
        self.shape
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    /// Position of particle `k` (1-based).
    pub fn x(&self, k: usize) -> i64 {
        self.positions[k - 1]
    }
}

/// A probability with the numerical diagnostics of its contour sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityResult {
    pub value: f64,
    /// `|Im|` of the final contour sum
    pub imag_residue: f64,
    /// change of the value over the last node doubling
    pub quad_delta: Option<f64>,
    /// trapezoid nodes used for `value`
    pub nodes: usize,
}

/// Integrand values at one contour node.
pub(crate) struct NodeEval {
    pub values: Vec<Complex64>,
    /// log of the scalar prefactor, used for the phase-continuity check
    pub log_prefactor: Option<Vec<Complex64>>,
}

/// Adaptive trapezoid rule for integrands returning several outputs per node.
///
/// The node count starts at `quad.nodes` and doubles (reusing all previous
/// nodes) until every output changes by less than [`QUAD_TOL`] or the change
/// stops shrinking.
pub(crate) fn adaptive_contour<F>(
    quad: &QuadratureSpec,
    outputs: usize,
    f: F,
) -> Result<Vec<ProbabilityResult>>
where
    F: Fn(Complex64) -> Result<NodeEval> + Sync + Send,
{
    quad.validate()?;
    let radius = quad.radius;
    let eval_at = |m: usize, idx: Vec<usize>| -> Result<Vec<NodeEval>> {
        idx.into_par_iter()
            .map(|j| {
                f(Complex64::from_polar(
                    radius,
                    2.0 * PI * j as f64 / m as f64,
                ))
            })
            .collect()
    };
    let mut m = quad.nodes;
    let mut evals = eval_at(m, (0..m).collect())?;
    let mut sums = sums_of(&evals, outputs);
    let mut delta: Option<f64> = None;
    while 2 * m <= MAX_QUAD_NODES.max(quad.nodes) {
        let fresh = eval_at(2 * m, (0..m).map(|j| 2 * j + 1).collect())?;
        let mut merged = Vec::with_capacity(2 * m);
        for (old, new) in evals.into_iter().zip(fresh) {
            merged.push(old);
            merged.push(new);
        }
        evals = merged;
        m *= 2;
        let next = sums_of(&evals, outputs);
        let d = next
            .iter()
            .zip(&sums)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        sums = next;
        let stalled = matches!(delta, Some(prev) if d > 0.5 * prev && d < QUAD_FAIL);
        delta = Some(d);
        // stop at the tolerance, or once doubling no longer helps (round-off floor)
        if d < QUAD_TOL || stalled {
            break;
        }
    }
    if let Some(d) = delta {
        if d > QUAD_FAIL {
            return Err(Error::QuadratureDivergence { delta: d, nodes: m });
        }
    }
    check_phase_continuity(&evals)?;
    Ok(sums
        .into_iter()
        .map(|s| ProbabilityResult {
            value: s.re,
            imag_residue: s.im.abs(),
            quad_delta: delta,
            nodes: m,
        })
        .collect())
}

fn sums_of(evals: &[NodeEval], outputs: usize) -> Vec<Complex64> {
    (0..outputs)
        .map(|o| {
            let column: Vec<Complex64> = evals.iter().map(|e| e.values[o]).collect();
            ordered_mean(&column)
        })
        .collect()
}

fn check_phase_continuity(evals: &[NodeEval]) -> Result<()> {
    let m = evals.len();
    for j in 0..m {
        let (Some(a), Some(b)) = (&evals[j].log_prefactor, &evals[(j + 1) % m].log_prefactor)
        else {
            continue;
        };
        for (x, y) in a.iter().zip(b) {
            let jump = (y.im - x.im).abs();
            if jump >= PI {
                return Err(Error::BranchDiscontinuity { jump });
            }
        }
    }
    Ok(())
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    Ok(())
}

pub(crate) fn check_index(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "particle index k = {k} outside 1..={n}"
        )));
    }
    Ok(())
}
