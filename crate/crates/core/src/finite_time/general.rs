//! `N x N` determinant formulas valid for any initial configuration.
//!
//! The integrands are symmetric in all `L` roots, hence analytic in `zhat`
//! away from the origin. Any radius off the unit circle works; small radii
//! lose the far tails to cancellation, see [`super::OUTER_RADIUS`] and
//! [`one_point_general_auto`].

use super::{
    adaptive_contour, check_index, check_time, Configuration, NodeEval, ProbabilityResult,
};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::quadrature::{evaluate_nodes, QuadratureSpec};
use crate::ring_bethe::{all_roots, SystemShape};
use num_complex::Complex64;

/// Largest ring handled by the root-sum determinant formulas.
pub const SMALL_RING_MAX: usize = 20;

fn check_small(shape: &SystemShape) -> Result<()> {
    if shape.l() > SMALL_RING_MAX {
        return Err(Error::ScaleExceeded {
            size: shape.l(),
            max: SMALL_RING_MAX,
        });
    }
    Ok(())
}

/// Per-root data shared by every matrix entry: `w`, `w+1` and `e^{tw}/(L (w+rho))`.
fn root_weights(
    shape: &SystemShape,
    zhat: Complex64,
    t: f64,
) -> Result<Vec<(Complex64, Complex64, Complex64)>> {
    let rho = shape.rho();
    let l = shape.l() as f64;
    Ok(all_roots(shape, zhat)?
        .into_iter()
        .map(|w| (w, w + 1.0, (t * w).exp() / (l * (w + rho))))
        .collect())
}

fn root_sum(weights: &[(Complex64, Complex64, Complex64)], p: i32, q: i32) -> Complex64 {
    weights
        .iter()
        .map(|(w, w1, c)| w.powi(p) * w1.powi(q) * c)
        .sum()
}

/// `P_Y(X; t)`, the probability of configuration `x` at time `t` from `y`.
pub fn transition_probability(
    y: &Configuration,
    x: &Configuration,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ProbabilityResult> {
    check_time(t)?;
    let shape = y.shape();
    if x.shape() != shape {
        return Err(Error::InvalidConfiguration(
            "configurations live on different rings".into(),
        ));
    }
    check_small(&shape)?;
    let n = shape.n();
    let res = adaptive_contour(quad, 1, |zhat| {
        let weights = root_weights(&shape, zhat, t)?;
        let m = CMatrix::from_fn(n, |i, j| {
            let (i1, j1) = (i as i64 + 1, j as i64 + 1);
            let p = j1 - i1 + 1;
            let q = -x.x(i + 1) + y.x(j + 1) + i1 - j1;
            root_sum(&weights, p as i32, q as i32)
        });
        Ok(NodeEval {
            values: vec![m.det()],
            log_prefactor: None,
        })
    })?;
    Ok(res[0])
}

/// `P_Y(x_k(t) >= a)` for a single threshold.
pub fn one_point_general(
    y: &Configuration,
    k: usize,
    a: i64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ProbabilityResult> {
    Ok(one_point_general_grid(y, k, &[a], t, quad)?[0])
}

/// `P_Y(x_k(t) >= a)` for every `a` in `thresholds`, sharing the root solves.
pub fn one_point_general_grid(
    y: &Configuration,
    k: usize,
    thresholds: &[i64],
    t: f64,
    quad: &QuadratureSpec,
) -> Result<Vec<ProbabilityResult>> {
    check_one_point(y, k, t)?;
    adaptive_contour(quad, thresholds.len(), |zhat| {
        Ok(NodeEval {
            values: one_point_integrand(y, k, thresholds, t, zhat)?,
            log_prefactor: None,
        })
    })
}

/// Radii tried by [`auto_radii`]: two inside the unit circle, then half-decade
/// steps from `10^0.5` to `10^16`. The roots only grow like `|zhat|^(1/L)`, so
/// even the largest radius is a mild contour in `w`.
pub fn auto_radius_candidates() -> impl Iterator<Item = f64> {
    [0.3, 0.5]
        .into_iter()
        .chain((1..=32).map(|j| 10f64.powf(f64::from(j) / 2.0)))
}
const SCAN_NODES: usize = 32;

/// A contour radius for each threshold: the one among [`auto_radius_candidates`] with the
/// smallest peak integrand on a coarse contour.
///
/// The integral is the same on every circle, but far thresholds need large
/// radii and thresholds near certainty degrade there, so no single radius
/// resolves a long grid.
pub fn auto_radii(y: &Configuration, k: usize, thresholds: &[i64], t: f64) -> Result<Vec<f64>> {
    check_one_point(y, k, t)?;
    let mut best = vec![(f64::INFINITY, f64::NAN); thresholds.len()];
    for r in auto_radius_candidates() {
        let quad = QuadratureSpec::new(SCAN_NODES, r)?;
        let Ok(samples) =
            evaluate_nodes(&quad, |zhat| one_point_integrand(y, k, thresholds, t, zhat))
        else {
            continue;
        };
        for (i, slot) in best.iter_mut().enumerate() {
            // `f64::max` drops NaN, so overflowed nodes are mapped to infinity first
            let peak = samples
                .iter()
                .map(|v| v[i].norm())
                .map(|m| if m.is_nan() { f64::INFINITY } else { m })
                .fold(0.0, f64::max);
            if peak.is_finite() && peak < slot.0 {
                *slot = (peak, r);
            }
        }
    }
    if best.iter().any(|b| b.1.is_nan()) {
        return Err(Error::NonConvergence {
            side: "outer",
            branch: 0,
        });
    }
    Ok(best.into_iter().map(|b| b.1).collect())
}

/// [`one_point_general_grid`] with the contour radius chosen per threshold
/// by [`auto_radii`]; `nodes` is the starting node count.
pub fn one_point_general_auto(
    y: &Configuration,
    k: usize,
    thresholds: &[i64],
    t: f64,
    nodes: usize,
) -> Result<Vec<ProbabilityResult>> {
    let radii = auto_radii(y, k, thresholds, t)?;
    let mut out = vec![None; thresholds.len()];
    for r in auto_radius_candidates() {
        let idx: Vec<usize> = (0..thresholds.len()).filter(|&i| radii[i] == r).collect();
        if idx.is_empty() {
            continue;
        }
        let group: Vec<i64> = idx.iter().map(|&i| thresholds[i]).collect();
        let res = one_point_general_grid(y, k, &group, t, &QuadratureSpec::new(nodes, r)?)?;
        for (i, p) in idx.into_iter().zip(res) {
            out[i] = Some(p);
        }
    }
    Ok(out
        .into_iter()
        .map(|p| p.expect("every threshold has a radius"))
        .collect())
}

fn check_one_point(y: &Configuration, k: usize, t: f64) -> Result<()> {
    check_time(t)?;
    check_small(&y.shape())?;
    check_index(k, y.shape().n())
}

fn one_point_integrand(
    y: &Configuration,
    k: usize,
    thresholds: &[i64],
    t: f64,
    zhat: Complex64,
) -> Result<Vec<Complex64>> {
    let shape = y.shape();
    let n = shape.n();
    let ki = k as i64;
    let sign = if ((k - 1) * (n + 1)).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let l = shape.l() as f64;
    let weights = root_weights(&shape, zhat, t)?;
    // z^{(k-1)L} = ((-1)^N r0^L zhat)^(k-1)
    let zl = if n.is_multiple_of(2) { 1.0 } else { -1.0 } * (l * shape.ln_r0()).exp() * zhat;
    let pref = sign * zl.powi(k as i32 - 1);
    Ok(thresholds
        .iter()
        .map(|&a| {
            let m = CMatrix::from_fn(n, |i, j| {
                let (i1, j1) = (i as i64 + 1, j as i64 + 1);
                let p = j1 - i1 + 1 - ki;
                let q = y.x(j + 1) - j1 - a + ki + 1;
                root_sum(&weights, p as i32, q as i32)
            });
            pref * m.det()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_large_rings() {
        let y = Configuration::step(SystemShape::new(30, 3).unwrap());
        assert!(matches!(
            one_point_general(&y, 1, 0, 1.0, &QuadratureSpec::default()),
            Err(Error::ScaleExceeded { .. })
        ));
    }

    #[test]
    fn free_particle_step() {
        let shape = SystemShape::new(3, 1).unwrap();
        let y = Configuration::new(shape, vec![0]).unwrap();
        let x = Configuration::new(shape, vec![1]).unwrap();
        let quad = QuadratureSpec::new(16, 0.5).unwrap();
        let p = transition_probability(&y, &x, 1.0, &quad).unwrap();
        assert!((p.value - (-1.0f64).exp()).abs() < 1e-12);
    }
}
