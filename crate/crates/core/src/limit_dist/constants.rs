//! The scalar functions `A1, A2, A3, B` in the exponent of the limit integrands.

use super::special::{polylog, PolylogOrder};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

const B_TERM_TOL: f64 = 1e-14;
const B_MAX_TERMS: usize = 4000;
/// Largest `|z|` accepted by [`b_constant`].
pub const B_MAX_MODULUS: f64 = 0.95;

/// `(A1, A2, A3) = (-Li_{3/2}(z)/sqrt(2 pi), -Li_{5/2}(z)/sqrt(2 pi), -Log(1-z)/4)`.
pub fn abc_constants(z: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
    let s = (2.0 * PI).sqrt();
    let a1 = -polylog(PolylogOrder::ThreeHalves, z)? / s;
    let a2 = -polylog(PolylogOrder::FiveHalves, z)? / s;
    let a3 = -(1.0 - z).ln() / 4.0;
    Ok((a1, a2, a3))
}

/// `A1(z)` as `int_R -s^2 z / (e^(s^2/2) - z) ds / (2 pi)`.
pub fn a1_quadrature(z: Complex64) -> Complex64 {
    let f = |s: f64| -s * s * z / ((s * s / 2.0).exp() - z);
    // the integrand is even; |s| > 14 contributes below e^(-98/2) s^2
    2.0 * integrate(f, 0.0, 14.0, 1e-16) / (2.0 * PI)
}

fn b_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut c = vec![0.0; B_MAX_TERMS + 1];
        for (n, cn) in c.iter_mut().enumerate().skip(2) {
            let inner: f64 = (1..n).map(|k| 1.0 / ((k * (n - k)) as f64).sqrt()).sum();
            *cn = inner / (4.0 * PI * n as f64);
        }
        c
    })
}

/// `c_n = (4 pi n)^(-1) sum_{k=1}^{n-1} (k (n-k))^(-1/2)`, the Taylor coefficients of `B`.
pub fn b_coefficient(n: usize) -> f64 {
    match b_coefficients().get(n) {
        Some(&c) => c,
        None => {
            let inner: f64 = (1..n).map(|k| 1.0 / ((k * (n - k)) as f64).sqrt()).sum();
            inner / (4.0 * PI * n as f64)
        }
    }
}

/// `B(z) = (4 pi)^(-1) int_0^z Li_{1/2}(y)^2 / y dy` by its Taylor series.
pub fn b_constant(z: Complex64) -> Result<Complex64> {
    if z.norm() > B_MAX_MODULUS {
        return Err(Error::InvalidArgument(format!(
            "B(z) needs |z| <= {B_MAX_MODULUS}, got {}",
            z.norm()
        )));
    }
    let coeffs = b_coefficients();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = z;
    for &c in &coeffs[2..] {
        power *= z;
        let term = c * power;
        sum += term;
        if term.norm() < B_TERM_TOL {
            return Ok(sum);
        }
    }
    if z.norm() == 0.0 {
        return Ok(sum);
    }
    Err(Error::SeriesStall {
        what: "B(z)",
        terms: B_MAX_TERMS,
    })
}

/// `B(z)` by quadrature along the segment `y = z s`, `s in [0, 1]`.
pub fn b_quadrature(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::BranchCut(z.re));
    }
    let f = |s: f64| {
        if s == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let li = polylog(PolylogOrder::Half, z * s).unwrap_or(Complex64::new(f64::NAN, 0.0));
        li * li / (4.0 * PI * s)
    };
    Ok(integrate(f, 0.0, 1.0, 1e-16))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_vanish_at_origin() {
        let (a1, a2, a3) = abc_constants(Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!((a1.norm(), a2.norm(), a3.norm()), (0.0, 0.0, 0.0));
        assert_eq!(b_constant(Complex64::new(0.0, 0.0)).unwrap().norm(), 0.0);
    }

    #[test]
    fn a3_at_one_half() {
        let (_, _, a3) = abc_constants(Complex64::new(0.5, 0.0)).unwrap();
        assert!((a3.re - 2f64.ln() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn first_b_coefficient() {
        assert!((b_coefficient(2) - 1.0 / (8.0 * PI)).abs() < 1e-17);
        assert!((b_coefficient(3) - 2f64.sqrt() / (12.0 * PI)).abs() < 1e-17);
        // beyond the cached range the coefficient is computed directly
        assert!(b_coefficient(5000) > 0.0 && b_coefficient(5000) < b_coefficient(4000));
    }

    #[test]
    fn b_rejects_large_modulus() {
        assert!(b_constant(Complex64::new(0.97, 0.0)).is_err());
    }
}
