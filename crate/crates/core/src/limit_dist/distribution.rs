//! The crossover distribution functions `F1(x; tau)` and `F2(x; tau, gamma)`.

use super::constants::{abc_constants, b_constant};
use super::kernels::{kernel_flat, kernel_step};
use super::nodes::NodeSet;
use crate::error::{Error, Result};
use crate::finite_time::{adaptive_contour, NodeEval, ProbabilityResult};
use crate::linalg::fredholm_det;
use crate::quadrature::QuadratureSpec;
use num_complex::Complex64;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Node truncation stops once the determinant changes by less than this,
/// relative to `max(1, |det|)`.
pub const TRUNCATION_TOL: f64 = 1e-9;
/// Default starting half-count of the node set.
pub const DEFAULT_NODE_COUNT: usize = 12;
/// Largest half-count tried before giving up.
pub const MAX_NODE_COUNT: usize = 384;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// flat initial data, `F1(x; tau)`
    Flat,
    /// step initial data, `F2(x; tau, gamma)`
    Step { gamma: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Flat => "f1",
            Family::Step { .. } => "f2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub value: f64,
    pub imag_residue: f64,
    /// largest node half-count any contour point needed
    pub m_used: usize,
    /// trapezoid nodes on the `z` circle
    pub nodes_used: usize,
    pub quad_delta: Option<f64>,
}

/// A distribution function tabulated on an `x` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionCurve {
    pub family: Family,
    pub tau: f64,
    pub quad: QuadratureSpec,
    pub points: Vec<CurvePoint>,
}

impl DistributionCurve {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }
}

/// `F1(x; tau)` at a single point; `m` is the starting node half-count.
pub fn f1(x: f64, tau: f64, quad: &QuadratureSpec, m: usize) -> Result<CurvePoint> {
    Ok(f1_grid(&[x], tau, quad, m)?.points[0])
}

/// `F2(x; tau, gamma)` at a single point.
pub fn f2(x: f64, tau: f64, gamma: f64, quad: &QuadratureSpec, m: usize) -> Result<CurvePoint> {
    Ok(f2_grid(&[x], tau, gamma, quad, m)?.points[0])
}

pub fn f1_grid(xs: &[f64], tau: f64, quad: &QuadratureSpec, m: usize) -> Result<DistributionCurve> {
    distribution_grid(Family::Flat, xs, tau, quad, m)
}

pub fn f2_grid(
    xs: &[f64],
    tau: f64,
    gamma: f64,
    quad: &QuadratureSpec,
    m: usize,
) -> Result<DistributionCurve> {
    distribution_grid(Family::Step { gamma }, xs, tau, quad, m)
}

/// Tabulates either family; the node sets and constants at each `z` are
/// shared by the whole `x` grid.
pub fn distribution_grid(
    family: Family,
    xs: &[f64],
    tau: f64,
    quad: &QuadratureSpec,
    m: usize,
) -> Result<DistributionCurve> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tau must be positive, got {tau}"
        )));
    }
    if let Family::Step { gamma } = family {
        if !gamma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "gamma must be finite, got {gamma}"
            )));
        }
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("x grid must be finite".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("node count must be positive".into()));
    }
    quad.require_unit_disk()?;
    let m_used = AtomicUsize::new(0);
    let results = adaptive_contour(quad, xs.len(), |z| {
        let (values, used) = integrand(family, z, xs, tau, m)?;
        m_used.fetch_max(used, Ordering::Relaxed);
        Ok(NodeEval {
            values,
            log_prefactor: None,
        })
    })?;
    let m_used = m_used.into_inner();
    Ok(DistributionCurve {
        family,
        tau,
        quad: *quad,
        points: xs
            .iter()
            .zip(results)
            .map(|(&x, r): (&f64, ProbabilityResult)| CurvePoint {
                x,
                value: r.value,
                imag_residue: r.imag_residue,
                m_used,
                nodes_used: r.nodes,
                quad_delta: r.quad_delta,
            })
            .collect(),
    })
}

fn kernel_det(family: Family, ns: &NodeSet, x: f64, tau: f64) -> Complex64 {
    let k = match family {
        Family::Flat => kernel_flat(ns, x, tau),
        Family::Step { gamma } => kernel_step(ns, x, tau, gamma),
    };
    fredholm_det(&k)
}

fn exponent(
    family: Family,
    x: f64,
    tau: f64,
    (a1, a2, a3): (Complex64, Complex64, Complex64),
    b: Complex64,
) -> Complex64 {
    match family {
        Family::Flat => x * a1 + tau * a2 + a3 + b,
        Family::Step { .. } => x * a1 + tau * a2 + 2.0 * b,
    }
}

/// The integrand at one `z` for every `x`, and the largest half-count used.
pub fn integrand(
    family: Family,
    z: Complex64,
    xs: &[f64],
    tau: f64,
    m0: usize,
) -> Result<(Vec<Complex64>, usize)> {
    let abc = abc_constants(z)?;
    let b = b_constant(z)?;
    let mut sets = vec![NodeSet::new(z, m0)?];
    let mut out = Vec::with_capacity(xs.len());
    let mut used = m0;
    for &x in xs {
        let det_at = |ns: &NodeSet| kernel_det(family, ns, x, tau);
        let mut level = 0;
        let mut det = det_at(&sets[0]);
        loop {
            if level + 1 == sets.len() {
                let next = 2 * sets[level].m;
                if next > MAX_NODE_COUNT {
                    let delta = (det - det_at(&sets[level.saturating_sub(1)])).norm();
                    return Err(Error::TruncationUnstable {
                        delta,
                        m: sets[level].m,
                    });
                }
                let grown = sets[level].grown(next)?;
                sets.push(grown);
            }
            let refined = det_at(&sets[level + 1]);
            let delta = (refined - det).norm();
            level += 1;
            det = refined;
            if delta < TRUNCATION_TOL * det.norm().max(1.0) {
                break;
            }
        }
        used = used.max(sets[level].m);
        out.push(exponent(family, x, tau, abc, b).exp() * det);
    }
    Ok((out, used))
}

/// The integrand with the kernel truncated to the nodes `xi_k`, `|k| <= m`.
pub fn integrand_truncated(
    family: Family,
    z: Complex64,
    x: f64,
    tau: f64,
    m: usize,
) -> Result<Complex64> {
    let ns = NodeSet::new(z, m)?;
    Ok(
        exponent(family, x, tau, abc_constants(z)?, b_constant(z)?).exp()
            * kernel_det(family, &ns, x, tau),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        let q = QuadratureSpec::default();
        assert!(f1(0.0, 0.0, &q, 12).is_err());
        assert!(f2(0.0, 1.0, f64::NAN, &q, 12).is_err());
        assert!(f1(0.0, 1.0, &q, 0).is_err());
    }

    #[test]
    fn integrand_conjugate_symmetry() {
        let z = Complex64::from_polar(0.5, 0.9);
        let xs = [-1.0, 0.5];
        for fam in [Family::Flat, Family::Step { gamma: 0.3 }] {
            let (a, _) = integrand(fam, z, &xs, 1.0, 12).unwrap();
            let (b, _) = integrand(fam, z.conj(), &xs, 1.0, 12).unwrap();
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v.conj()).norm() < 1e-12 * u.norm().max(1.0));
            }
        }
    }
}
