//! Half-integer polylogarithms and the complex complementary error function.

use crate::error::{Error, Result};
use crate::quadrature::integrate;
use num_complex::Complex64;

const SERIES_RADIUS: f64 = 0.8;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Orders `s` supported by [`polylog`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolylogOrder {
    Half,
    ThreeHalves,
    FiveHalves,
}

impl PolylogOrder {
    pub fn s(self) -> f64 {
        match self {
            PolylogOrder::Half => 0.5,
            PolylogOrder::ThreeHalves => 1.5,
            PolylogOrder::FiveHalves => 2.5,
        }
    }

    fn gamma(self) -> f64 {
        match self {
            PolylogOrder::Half => SQRT_PI,
            PolylogOrder::ThreeHalves => 0.5 * SQRT_PI,
            PolylogOrder::FiveHalves => 0.75 * SQRT_PI,
        }
    }
}

fn check_cut(w: Complex64) -> Result<()> {
    if w.im == 0.0 && w.re >= 1.0 {
        return Err(Error::BranchCut(w.re));
    }
    Ok(())
}

/// `Li_s(w)`: power series for `|w| <= 0.8`, integral representation otherwise.
pub fn polylog(order: PolylogOrder, w: Complex64) -> Result<Complex64> {
    check_cut(w)?;
    if w.norm() <= SERIES_RADIUS {
        polylog_series(order, w)
    } else {
        polylog_integral(order, w)
    }
}

/// `sum_k w^k / k^s`, for `|w| < 1`.
pub fn polylog_series(order: PolylogOrder, w: Complex64) -> Result<Complex64> {
    if w.norm() >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "series needs |w| < 1, got {}",
            w.norm()
        )));
    }
    let s = order.s();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = w;
    for k in 1..100_000u32 {
        let term = power / (k as f64).powf(s);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            return Ok(sum);
        }
        power *= w;
        if power.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::SeriesStall {
        what: "polylogarithm",
        terms: 100_000,
    })
}

/// `Li_s(w) = w / Gamma(s) int_0^inf x^(s-1) / (e^x - w) dx`, with `x = u^2`.
pub fn polylog_integral(order: PolylogOrder, w: Complex64) -> Result<Complex64> {
    check_cut(w)?;
    if w == Complex64::new(0.0, 0.0) {
        return Ok(w);
    }
    let power = 2.0 * order.s() - 1.0;
    // beyond u_max the integrand is below e^(-u^2) < 1e-18 relative to 1
    let u_max = (w.norm().max(1.0).ln() + 41.5).sqrt();
    let integrand = |u: f64| {
        let num = 2.0 * u.powf(power);
        Complex64::new(num, 0.0) / (Complex64::new((u * u).exp(), 0.0) - w)
    };
    // split near the origin where the integrand peaks when w is close to 1
    let knee = (w - 1.0).norm().sqrt().clamp(1e-6, 1.0);
    let head = integrate(integrand, 0.0, knee, 1e-16);
    let tail = integrate(integrand, knee, u_max, 1e-16);
    Ok(w * (head + tail) / order.gamma())
}

/// Complementary error function for complex argument.
///
/// Maclaurin series of `erf` near the origin and for `Re z < 1`, `|z| < 6`;
/// elsewhere `erfc(z) = exp(-z^2) w(iz)` with the Faddeeva function
/// from its Laplace continued fraction. Negative real parts use
/// `erfc(z) = 2 - erfc(-z)`.
pub fn cerfc(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return 2.0 - cerfc(-z);
    }
    if z.re < 1.5 && z.norm() < 2.0 || z.re < 1.0 && z.norm() < 6.0 {
        1.0 - erf_series(z)
    } else {
        (-z * z).exp() * faddeeva_cf(Complex64::new(-z.im, z.re))
    }
}

fn erf_series(z: Complex64) -> Complex64 {
    // erf z = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1))
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..2000 {
        term *= -z2 / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * (2.0 / SQRT_PI)
}

/// `w(z) = i/sqrt(pi) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))` for `Im z > 0`,
/// evaluated with the modified Lentz method.
fn faddeeva_cf(z: Complex64) -> Complex64 {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut f = if z.norm() == 0.0 { tiny } else { z };
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for j in 1..20_000 {
        let a = -(j as f64) / 2.0;
        d = z + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        d = d.inv();
        c = z + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    Complex64::new(0.0, 1.0 / SQRT_PI) / f
}

/// Airy function `Ai(x)` for real `x >= -12`.
pub fn airy_ai(x: f64) -> f64 {
    if x > 5.0 {
        // asymptotic series in zeta = 2/3 x^(3/2)
        let zeta = 2.0 / 3.0 * x.powf(1.5);
        let mut u = 1.0;
        let mut sum = 1.0;
        for k in 1..20 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            let term = u / zeta.powi(k);
            if term < 1e-17 {
                break;
            }
            sum += if k % 2 == 0 { term } else { -term };
        }
        return (-zeta).exp() / (2.0 * SQRT_PI * x.powf(0.25)) * sum;
    }
    const AI0: f64 = 0.355_028_053_887_817_2;
    const DAI0: f64 = 0.258_819_403_792_806_8;
    let x3 = x * x * x;
    let (mut f, mut g) = (1.0, x);
    let (mut tf, mut tg) = (1.0, x);
    for k in 0..200 {
        let kf = 3.0 * k as f64;
        tf *= x3 / ((kf + 2.0) * (kf + 3.0));
        tg *= x3 / ((kf + 3.0) * (kf + 4.0));
        f += tf;
        g += tg;
        if tf.abs() < 1e-18 * f.abs().max(1e-30) && tg.abs() < 1e-18 * g.abs().max(1e-30) {
            break;
        }
    }
    AI0 * f - DAI0 * g
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * cerfc(Complex64::new(-x / 2f64.sqrt(), 0.0)).re
}
