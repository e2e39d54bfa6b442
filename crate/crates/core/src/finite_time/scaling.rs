//! Relaxation-scale parameter maps and the particle/current correspondence.

use super::{check_index, Configuration};
use crate::error::{Error, Result};
use crate::ring_bethe::SystemShape;

/// Time and threshold for the flat tagged-particle scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatScaling {
    pub t: f64,
    pub a: i64,
    /// fluctuation scale `rho^(-1/3) (1-rho)^(2/3) t^(1/3)`
    pub sigma: f64,
    /// the `x` that the integer `a` corresponds to exactly
    pub x_realized: f64,
}

/// Time and threshold for the step tagged-particle scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepScaling {
    pub t: f64,
    pub a: i64,
    pub sigma: f64,
    pub x_realized: f64,
    pub gamma_realized: f64,
}

fn sigma(rho: f64, t: f64) -> f64 {
    rho.powf(-1.0 / 3.0) * (1.0 - rho).powf(2.0 / 3.0) * t.cbrt()
}

/// `t = tau L^(3/2) / sqrt(rho (1-rho))`, `a = round((1-rho) t + k d - x sigma)`.
pub fn flat_scaling(tau: f64, x: f64, k: usize, shape: &SystemShape) -> Result<FlatScaling> {
    let d = shape.flat_spacing().ok_or_else(|| {
        Error::ShapeMismatch(format!(
            "flat scaling needs L = d N, got L={}, N={}",
            shape.l(),
            shape.n()
        ))
    })?;
    check_index(k, shape.n())?;
    if !(tau > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tau must be positive, got {tau}"
        )));
    }
    let rho = shape.rho();
    let t = tau * (shape.l() as f64).powf(1.5) / (rho * (1.0 - rho)).sqrt();
    let s = sigma(rho, t);
    let centre = (1.0 - rho) * t + (k * d) as f64;
    let a = (centre - x * s).round() as i64;
    Ok(FlatScaling {
        t,
        a,
        sigma: s,
        x_realized: (centre - a as f64) / s,
    })
}

/// `t = (N/rho^2) floor(tau sqrt(N/(1-rho))) + gamma N/rho^2 + (N-k)/rho^2`,
/// `a = round((1-rho) t - (N-k)/rho - x sigma)`.
pub fn step_scaling(
    tau: f64,
    gamma: f64,
    x: f64,
    k: usize,
    shape: &SystemShape,
) -> Result<StepScaling> {
    check_index(k, shape.n())?;
    let rho = shape.rho();
    let n = shape.n() as f64;
    let period = n / (rho * rho);
    let windings = (tau * n.sqrt() / (1.0 - rho).sqrt()).floor();
    let lag = (n - k as f64) / (rho * rho);
    let t = period * windings + gamma * period + lag;
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    let s = sigma(rho, t);
    let centre = (1.0 - rho) * t - (n - k as f64) / rho;
    let a = (centre - x * s).round() as i64;
    Ok(StepScaling {
        t,
        a,
        sigma: s,
        x_realized: if s > 0.0 { (centre - a as f64) / s } else { x },
        gamma_realized: gamma,
    })
}

/// Thresholds `(iL + m + 1, iN + (N+1-k) + m 1{m <= 0})` with
/// `x_k(t) >= iL+m+1` iff `J_m(t) >=` the second entry, for step initial data.
pub fn current_from_tagged(i: i64, m: i64, k: usize, shape: &SystemShape) -> Result<(i64, i64)> {
    check_index(k, shape.n())?;
    let (l, n) = (shape.l() as i64, shape.n() as i64);
    if i < 1 {
        return Err(Error::InvalidArgument(format!(
            "winding index i must be >= 1, got {i}"
        )));
    }
    if !(-n + 1..=l - n).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "bond m = {m} outside {}..={}",
            -n + 1,
            l - n
        )));
    }
    let indicator = if m <= 0 { m } else { 0 };
    Ok((i * l + m + 1, i * n + (n + 1 - k as i64) + indicator))
}

/// Current threshold for arbitrary initial data:
/// `x_k(t) >= iL+m+1` iff `J_m(t) >= iN - (k-1) - sum_j floor((y_j - m - 1)/L)`,
/// valid whenever `x_k(0) <= iL + m`.
pub fn duality_threshold(y: &Configuration, i: i64, m: i64, k: usize) -> Result<i64> {
    let shape = y.shape();
    check_index(k, shape.n())?;
    let (l, n) = (shape.l() as i64, shape.n() as i64);
    if y.x(k) > i * l + m {
        return Err(Error::InvalidArgument(format!(
            "x_k(0) = {} exceeds iL + m = {}",
            y.x(k),
            i * l + m
        )));
    }
    let offset: i64 = y
        .positions()
        .iter()
        .map(|&yj| (yj - m - 1).div_euclid(l))
        .sum();
    Ok(i * n - (k as i64 - 1) - offset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_plug_in() {
        let shape = SystemShape::flat(2, 50).unwrap();
        let f = flat_scaling(0.7, 0.0, 3, &shape).unwrap();
        assert_eq!(f.a, (f.t / 2.0 + 6.0).round() as i64);
        assert!(f.x_realized.abs() <= 0.5 / f.sigma + 1e-12);
    }

    #[test]
    fn step_period_shift() {
        let shape = SystemShape::new(40, 10).unwrap();
        let s0 = step_scaling(1.0, 0.25, 0.3, 4, &shape).unwrap();
        let s1 = step_scaling(1.0, 1.25, 0.3, 4, &shape).unwrap();
        let period = 10.0 / (0.25f64 * 0.25);
        assert!((s1.t - s0.t - period).abs() < 1e-9);
        assert!(matches!(
            step_scaling(1.0, -20.0, 0.0, 10, &shape),
            Err(Error::NegativeTime(_))
        ));
    }

    #[test]
    fn step_threshold_matches_general_form() {
        let shape = SystemShape::new(7, 3).unwrap();
        let y = Configuration::step(shape);
        for m in -2..=4 {
            for k in 1..=3 {
                for i in 1..3 {
                    let (_, j) = current_from_tagged(i, m, k, &shape).unwrap();
                    assert_eq!(
                        j,
                        duality_threshold(&y, i, m, k).unwrap(),
                        "m={m} k={k} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn flat_threshold_at_origin_bond() {
        let y = Configuration::flat(3, 4).unwrap();
        for k in 1..=4 {
            assert_eq!(
                duality_threshold(&y, 2, 0, k).unwrap(),
                2 * 4 - k as i64 + 1
            );
        }
    }
}
