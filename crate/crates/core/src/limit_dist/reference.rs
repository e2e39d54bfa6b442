//! Random-matrix and Gaussian distribution functions, emitted alongside
//! limit curves as plot data.

use super::special::{airy_ai, normal_cdf};
use crate::linalg::CMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::str::FromStr;

const GL_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceCurve {
    /// `F_GOE(2^(2/3) x)`
    Goe,
    /// `F_GUE(x)`
    Gue,
    /// standard normal
    Gaussian,
}

impl FromStr for ReferenceCurve {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "goe" => Ok(Self::Goe),
            "gue" => Ok(Self::Gue),
            "gaussian" => Ok(Self::Gaussian),
            other => Err(format!(
                "unknown reference curve {other:?}; expected goe, gue or gaussian"
            )),
        }
    }
}

impl ReferenceCurve {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Goe => "goe",
            Self::Gue => "gue",
            Self::Gaussian => "gaussian",
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            Self::Goe => f_goe(2f64.powf(2.0 / 3.0) * x),
            Self::Gue => f_gue(x),
            Self::Gaussian => normal_cdf(x),
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (t * pn - pn1) / (t * t - 1.0);
            let step = pn / dp;
            t -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Discretized `B_s(u, v) = Ai(u + v + s)` on `L^2(0, inf)`, symmetrized by
/// the square roots of the weights.
fn airy_hankel(s: f64) -> CMatrix {
    let (t, w) = gauss_legendre(GL_NODES);
    let len = 16.0 + (-s).max(0.0);
    let u: Vec<f64> = t.iter().map(|ti| (ti + 1.0) * len / 2.0).collect();
    let sw: Vec<f64> = w.iter().map(|wi| (wi * len / 2.0).sqrt()).collect();
    CMatrix::from_fn(GL_NODES, |i, j| {
        Complex64::new(sw[i] * airy_ai(u[i] + u[j] + s) * sw[j], 0.0)
    })
}

/// `F_GOE(s) = det(I - B_s)`.
pub fn f_goe(s: f64) -> f64 {
    if s > 12.0 {
        return 1.0;
    }
    airy_hankel(s).identity_plus(-1.0).det().re
}

/// `F_GUE(s) = det(I - B_s^2) = det(I - B_s) det(I + B_s)`.
pub fn f_gue(s: f64) -> f64 {
    if s > 12.0 {
        return 1.0;
    }
    let b = airy_hankel(s);
    (b.identity_plus(-1.0).det() * b.identity_plus(1.0).det()).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn tracy_widom_known_values() {
        assert!(
            (f_gue(-2.0) - 0.413_224_142_505_122_6).abs() < 1e-10,
            "{}",
            f_gue(-2.0)
        );
        let goe: Vec<f64> = (-8..=4).map(|s| f_goe(s as f64)).collect();
        assert!(goe.windows(2).all(|w| w[0] < w[1]));
        assert!(goe[0] > -1e-12 && goe[12] < 1.0);
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "GOE".parse::<ReferenceCurve>().unwrap(),
            ReferenceCurve::Goe
        );
        assert!("x".parse::<ReferenceCurve>().is_err());
    }
}
