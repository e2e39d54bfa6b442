//! The node set `{xi : exp(-xi^2/2) = z, Re xi < 0}` and the integral term
//! `-(2 pi)^(-1/2) int_{-inf}^{xi} Li_{1/2}(exp(-w^2/2)) dw` of the kernel exponents.

use super::special::{cerfc, polylog, PolylogOrder};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use num_complex::Complex64;
use std::f64::consts::PI;

const PSI_TERM_TOL: f64 = 1e-16;
const PSI_MAX_TERMS: usize = 10_000;

/// `xi_k = -sqrt(-2 Log z - 4 pi i k)`.
pub fn node(z: Complex64, k: i64) -> Complex64 {
    -(-2.0 * z.ln() - Complex64::new(0.0, 4.0 * PI * k as f64)).sqrt()
}

/// Nodes for `k = -m..=m` with their integral terms.
#[derive(Debug, Clone)]
pub struct NodeSet {
    pub z: Complex64,
    pub m: usize,
    /// nodes ordered by `k` ascending
    pub nodes: Vec<Complex64>,
    /// `psi_int(xi, z)` for each node
    pub psi: Vec<Complex64>,
}

impl NodeSet {
    pub fn new(z: Complex64, m: usize) -> Result<Self> {
        let r = z.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::DegenerateZ(r));
        }
        let mi = m as i64;
        let nodes: Vec<Complex64> = (-mi..=mi).map(|k| node(z, k)).collect();
        let psi = nodes
            .iter()
            .map(|&xi| psi_series(xi))
            .collect::<Result<_>>()?;
        Ok(Self { z, m, nodes, psi })
    }

    /// The same node set with half-count `m2 >= m`, reusing computed terms.
    pub fn grown(&self, m2: usize) -> Result<Self> {
        if m2 <= self.m {
            return Ok(self.clone());
        }
        let extra = (m2 - self.m) as i64;
        let (m, m2i) = (self.m as i64, m2 as i64);
        let low: Vec<Complex64> = (-m2i..-m).map(|k| node(self.z, k)).collect();
        let high: Vec<Complex64> = (m + 1..=m2i).map(|k| node(self.z, k)).collect();
        debug_assert_eq!(low.len() as i64, extra);
        let mut nodes = low.clone();
        nodes.extend_from_slice(&self.nodes);
        nodes.extend_from_slice(&high);
        let mut psi: Vec<Complex64> = low
            .iter()
            .map(|&xi| psi_series(xi))
            .collect::<Result<_>>()?;
        psi.extend_from_slice(&self.psi);
        for &xi in &high {
            psi.push(psi_series(xi)?);
        }
        Ok(Self {
            z: self.z,
            m: m2,
            nodes,
            psi,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// The integral term at a node `xi` of `z`.
///
/// Evaluated as `-1/2 sum_{j>=1} erfc(-xi sqrt(j/2)) / j`, from termwise
/// integration of the series of `Li_{1/2}`; the terms decay like `|z|^j`.
pub fn psi_int(xi: Complex64, z: Complex64) -> Result<Complex64> {
    let defect = ((-xi * xi / 2.0).exp() - z).norm();
    if defect > 1e-10 * z.norm().max(1.0) || xi.re >= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "{xi} is not a left node of z = {z}"
        )));
    }
    psi_series(xi)
}

fn psi_series(xi: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 1..=PSI_MAX_TERMS {
        let jf = j as f64;
        let term = cerfc(-xi * (jf / 2.0).sqrt()) / jf;
        sum += term;
        if term.norm() < PSI_TERM_TOL {
            return Ok(-0.5 * sum);
        }
    }
    Err(Error::SeriesStall {
        what: "psi_int",
        terms: PSI_MAX_TERMS,
    })
}

/// The integral term by quadrature along `(-inf, Re xi]` followed by the
/// vertical segment to `xi`.
pub fn psi_int_path(xi: Complex64) -> Result<Complex64> {
    let li = |w: Complex64| polylog(PolylogOrder::Half, (-w * w / 2.0).exp());
    let x0 = xi.re;
    let lower = x0.min(0.0) - 12.0;
    let horizontal = integrate(
        |x| li(Complex64::new(x, 0.0)).unwrap_or(Complex64::new(f64::NAN, 0.0)),
        lower,
        x0,
        1e-15,
    );
    let vertical = integrate(
        |s| {
            let w = Complex64::new(x0, s * xi.im);
            li(w).unwrap_or(Complex64::new(f64::NAN, 0.0)) * Complex64::new(0.0, xi.im)
        },
        0.0,
        1.0,
        1e-15,
    );
    let total = -(horizontal + vertical) / (2.0 * PI).sqrt();
    if total.re.is_nan() || total.im.is_nan() {
        return Err(Error::BranchCut(f64::NAN));
    }
    Ok(total)
}

/// The integral term as `int_R Log(1 - z e^(-s^2/2)) / (i s - xi) ds / (2 pi)`.
pub fn psi_int_line(xi: Complex64, z: Complex64) -> Complex64 {
    let f = |s: f64| {
        let w = Complex64::new(1.0, 0.0) - z * (-s * s / 2.0).exp();
        w.ln() / (Complex64::new(0.0, s) - xi)
    };
    let half = 12.0;
    (integrate(f, -half, 0.0, 1e-16) + integrate(f, 0.0, half, 1e-16)) / (2.0 * PI)
}
