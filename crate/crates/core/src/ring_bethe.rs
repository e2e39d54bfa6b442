//! Roots of `q_z(w) = w^N (w+1)^(L-N) - z^L` and products over them.
//!
//! The contour variable is the rescaled `zhat` with
//! `z^L = (-1)^N r0^L zhat`, `r0 = rho^rho (1-rho)^(1-rho)`, so that the
//! root condition reads
//!
//! ```text
//! (-w/rho)^N ((w+1)/(1-rho))^(L-N) = zhat.
//! ```
//!
//! For `0 < |zhat| < 1` the roots split into `L-N` points with
//! `Re w < -rho` (around `-1`) and `N` points with `Re w > -rho` (around `0`).
//! Each family is the preimage of a circle under a univalent map, so the
//! roots are found one branch at a time:
//!
//! * right: `(-w/rho) ((w+1)/(1-rho))^((L-N)/N) = exp((Log zhat + 2 pi i b)/N)`
//! * left:  `((w+1)/(1-rho)) (-w/rho)^(N/(L-N)) = exp((Log zhat + 2 pi i b)/(L-N))`
//!
//! The fractional powers are principal and well defined on the respective
//! half planes. Nothing of size `r0^L` is ever formed.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest ring size accepted by [`solve_bethe_roots`].
pub const MAX_RING_SIZE: usize = 4096;

const RESIDUAL_BOUND: f64 = 1e-10;
const PAIRING_TOL: f64 = 1e-9;

/// Ring size `L` and particle number `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemShape {
    l: usize,
    n: usize,
}

impl SystemShape {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if n == 0 || n >= l {
            return Err(Error::InvalidShape(format!(
                "need 1 <= N < L, got L={l}, N={n}"
            )));
        }
        Ok(Self { l, n })
    }

    /// Flat shape `L = d N`.
    pub fn flat(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidShape(format!(
                "flat spacing d must be >= 2, got {d}"
            )));
        }
        Self::new(d * n, n)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of holes `L - N`.
    pub fn holes(&self) -> usize {
        self.l - self.n
    }

    pub fn rho(&self) -> f64 {
        self.n as f64 / self.l as f64
    }

    /// `ln r0 = rho ln rho + (1-rho) ln(1-rho)`.
    pub fn ln_r0(&self) -> f64 {
        let r = self.rho();
        r * r.ln() + (1.0 - r) * (1.0 - r).ln()
    }

    pub fn r0(&self) -> f64 {
        self.ln_r0().exp()
    }

    /// `d` when `L = d N`.
    pub fn flat_spacing(&self) -> Option<usize> {
        self.l.is_multiple_of(self.n).then_some(self.l / self.n)
    }
}

/// The Bethe roots for one value of `zhat`, split by `Re w` against `-rho`.
///
/// Roots are in canonical order: by branch index `b` ascending, with
/// `b` running over `-(n/2) ..= n-1-n/2` for a family of size `n`.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub shape: SystemShape,
    pub zhat: Complex64,
    pub left: Vec<Complex64>,
    pub right: Vec<Complex64>,
    /// Largest normalised defect `|(-w/rho)^N ((w+1)/(1-rho))^(L-N) - zhat|`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// The branch equation of one root family.
struct Family {
    side: Side,
    rho: f64,
    /// exponent on the secondary factor
    kappa: f64,
    /// family size, i.e. the root of `zhat` taken
    count: usize,
    n: usize,
    log_zhat: Complex64,
}

impl Family {
    fn new(shape: &SystemShape, side: Side, log_zhat: Complex64) -> Self {
        let (n, h) = (shape.n() as f64, shape.holes() as f64);
        let (kappa, count) = match side {
            Side::Right => (h / n, shape.n()),
            Side::Left => (n / h, shape.holes()),
        };
        Self {
            side,
            rho: shape.rho(),
            kappa,
            count,
            n: shape.n(),
            log_zhat,
        }
    }

    fn target(&self, b: i64) -> Complex64 {
        (self.log_zhat + Complex64::new(0.0, 2.0 * PI * b as f64)) / self.count as f64
    }

    fn in_half_plane(&self, w: Complex64) -> bool {
        match self.side {
            Side::Right => w.re > -self.rho,
            Side::Left => w.re < -self.rho,
        }
    }

    /// `Log(F(w)/c)` reduced to the principal strip, and its derivative.
    fn eval(&self, w: Complex64, target: Complex64) -> Option<(Complex64, Complex64)> {
        let rho = self.rho;
        let a = -w / rho;
        let b = (w + 1.0) / (1.0 - rho);
        let (main, minor) = match self.side {
            Side::Right => (a, b),
            Side::Left => (b, a),
        };
        if minor.re <= 0.0 || main == Complex64::new(0.0, 0.0) {
            return None;
        }
        let mut g = main.ln() + self.kappa * minor.ln() - target;
        g.im -= 2.0 * PI * (g.im / (2.0 * PI)).round();
        let dg = match self.side {
            Side::Right => 1.0 / w + self.kappa / (w + 1.0),
            Side::Left => 1.0 / (w + 1.0) + self.kappa / w,
        };
        Some((g, dg))
    }

    fn newton(&self, mut w: Complex64, target: Complex64, max_iter: usize) -> Option<Complex64> {
        for _ in 0..max_iter {
            let (g, dg) = self.eval(w, target)?;
            let mut step = g / dg;
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            // keep the iterate away from the singular points 0 and -1
            let room = 0.5 * w.norm().min((w + 1.0).norm());
            if step.norm() > room {
                step *= room / step.norm();
            }
            w -= step;
            if step.norm() <= 1e-15 * (1.0 + w.norm()) {
                let (g, _) = self.eval(w, target)?;
                return (g.norm() < 1e-12).then_some(w);
            }
        }
        let (g, _) = self.eval(w, target)?;
        (g.norm() < 1e-12).then_some(w)
    }

    /// Local approximation near the double point `-rho`:
    /// `w = -rho +/- rho sqrt(1-rho) xi / sqrt(N)` with `xi^2 = -2 (Log zhat + 2 pi i b)`.
    fn critical_seed(&self, b: i64) -> Complex64 {
        let xi = (-2.0 * (self.log_zhat + Complex64::new(0.0, 2.0 * PI * b as f64))).sqrt();
        let scale = self.rho * (1.0 - self.rho).sqrt() / (self.n as f64).sqrt();
        match self.side {
            Side::Right => -self.rho + scale * xi,
            Side::Left => -self.rho - scale * xi,
        }
    }

    fn accept(&self, w: Option<Complex64>) -> Option<Complex64> {
        w.filter(|w| self.in_half_plane(*w))
    }

    /// Continuation along the ray `c = s exp(i arg c_b)` from small `s`,
    /// equivalent to growing `|zhat|` from near zero.
    fn ray_continuation(&self, target: Complex64) -> Option<Complex64> {
        let rho = self.rho;
        let log_s_end = target.re;
        let arg = target.im;
        let log_s0 = (-4.0f64).min(log_s_end - 1.0);
        let start = Complex64::new(log_s0, arg);
        let c0 = start.exp();
        let mut w = match self.side {
            // F(w) ~ (-w/rho) (1-rho)^(-kappa) for small w
            Side::Right => -rho * (1.0 - rho).powf(self.kappa) * c0,
            Side::Left => -1.0 + (1.0 - rho) * rho.powf(self.kappa) * c0,
        };
        w = self.accept(self.newton(w, start, 60))?;
        let mut log_s = log_s0;
        let mut h = (log_s_end - log_s0) / 16.0;
        while log_s < log_s_end {
            let next = (log_s + h).min(log_s_end);
            let t = Complex64::new(next, arg);
            match self.accept(self.newton(w, t, 30)) {
                Some(wn) if (wn - w).norm() < 0.25 * (w + rho).norm().max(1e-3) => {
                    w = wn;
                    log_s = next;
                    h *= 1.5;
                }
                _ => {
                    h *= 0.5;
                    if h < 1e-12 {
                        return None;
                    }
                }
            }
        }
        Some(w)
    }

    fn branches(&self) -> Vec<i64> {
        let c = self.count as i64;
        (-(c / 2)..c - c / 2).collect()
    }

    fn solve(&self) -> Result<Vec<Complex64>> {
        let branches = self.branches();
        let mut roots = vec![None; branches.len()];
        let origin = (self.count / 2) as i64;
        let near = 0.3 * self.rho.min(1.0 - self.rho);
        // walk outward from b = 0 so that each seed can be extrapolated from
        // the two previously solved neighbours
        let mut order = vec![0i64];
        for s in 1..=self.count as i64 {
            order.push(s);
            order.push(-s);
        }
        for b in order {
            let idx = b + origin;
            if idx < 0 || idx >= self.count as i64 {
                continue;
            }
            let idx = idx as usize;
            let target = self.target(b);
            let crit = self.critical_seed(b);
            let step = if b >= 0 { -1i64 } else { 1 };
            let prev = |k: i64| -> Option<Complex64> {
                let j = idx as i64 + k * step;
                if (0..self.count as i64).contains(&j) {
                    roots[j as usize]
                } else {
                    None
                }
            };
            let seed = if (crit + self.rho).norm() < near || b == 0 {
                crit
            } else {
                match (prev(1), prev(2)) {
                    (Some(p1), Some(p2)) => 2.0 * p1 - p2,
                    (Some(p1), None) => p1,
                    _ => crit,
                }
            };
            let root = self
                .accept(self.newton(seed, target, 60))
                .or_else(|| self.ray_continuation(target))
                .ok_or(Error::NonConvergence {
                    side: self.side.name(),
                    branch: idx,
                })?;
            roots[idx] = Some(root);
        }
        Ok(roots
            .into_iter()
            .map(|r| r.expect("every branch solved"))
            .collect())
    }
}

/// Normalised root condition `(-w/rho)^N ((w+1)/(1-rho))^(L-N)`.
pub fn normalized_q(shape: &SystemShape, w: Complex64) -> Complex64 {
    let rho = shape.rho();
    let e =
        shape.n() as f64 * (-w / rho).ln() + shape.holes() as f64 * ((w + 1.0) / (1.0 - rho)).ln();
    e.exp()
}

/// Solves for all `L` roots at the rescaled contour point `zhat`.
pub fn solve_bethe_roots(shape: &SystemShape, zhat: Complex64) -> Result<RootSet> {
    solve_bethe_roots_with_limit(shape, zhat, MAX_RING_SIZE)
}

pub fn solve_bethe_roots_with_limit(
    shape: &SystemShape,
    zhat: Complex64,
    max_l: usize,
) -> Result<RootSet> {
    let modulus = zhat.norm();
    if !(modulus > 0.0 && modulus < 1.0) {
        return Err(Error::DegenerateZ(modulus));
    }
    if shape.l() > max_l {
        return Err(Error::ScaleExceeded {
            size: shape.l(),
            max: max_l,
        });
    }
    let log_zhat = zhat.ln();
    let right = Family::new(shape, Side::Right, log_zhat).solve()?;
    let left = Family::new(shape, Side::Left, log_zhat).solve()?;
    let residual = left
        .iter()
        .chain(right.iter())
        .map(|&w| (normalized_q(shape, w) - zhat).norm())
        .fold(0.0, f64::max);
    if residual > RESIDUAL_BOUND {
        return Err(Error::NonConvergence {
            side: "residual",
            branch: 0,
        });
    }
    Ok(RootSet {
        shape: *shape,
        zhat,
        left,
        right,
        residual,
    })
}

/// All `L` roots at any `zhat` off the unit circle, unordered.
///
/// Inside the unit disk this is [`solve_bethe_roots`]. Outside it the two
/// families are no longer separated and the roots come from simultaneous
/// Aberth iteration on the normalised polynomial followed by Newton polishing.
pub fn all_roots(shape: &SystemShape, zhat: Complex64) -> Result<Vec<Complex64>> {
    let modulus = zhat.norm();
    if modulus < 1.0 {
        return Ok(solve_bethe_roots(shape, zhat)?.all().copied().collect());
    }
    if !(modulus > 1.0 && modulus.is_finite()) {
        return Err(Error::DegenerateZ(modulus));
    }
    if shape.l() > MAX_RING_SIZE {
        return Err(Error::ScaleExceeded {
            size: shape.l(),
            max: MAX_RING_SIZE,
        });
    }
    let (l, n, rho) = (shape.l(), shape.n(), shape.rho());
    let lf = l as f64;
    // Newton step q/q' for q(w) = (-w/rho)^N ((w+1)/(1-rho))^(L-N) - zhat
    let step = |w: Complex64| {
        let g = (-w / rho).powi(n as i32) * ((w + 1.0) / (1.0 - rho)).powi(shape.holes() as i32);
        (g - zhat) * w * (w + 1.0) / (g * (lf * w + n as f64))
    };
    let centre = Complex64::new(rho - 1.0, 0.0);
    let spread = 1.5 * shape.r0() * modulus.powf(1.0 / lf) + 1.0;
    let phase = zhat.arg() / lf + 0.4 / lf;
    let mut roots: Vec<Complex64> = (0..l)
        .map(|j| centre + Complex64::from_polar(spread, phase + 2.0 * PI * j as f64 / lf))
        .collect();
    let mut converged = false;
    for _ in 0..500 {
        let mut largest: f64 = 0.0;
        for i in 0..l {
            let ratio = step(roots[i]);
            let repulsion: Complex64 = (0..l)
                .filter(|&j| j != i)
                .map(|j| (roots[i] - roots[j]).inv())
                .sum();
            let delta = ratio / (1.0 - ratio * repulsion);
            roots[i] -= delta;
            largest = largest.max(delta.norm() / (1.0 + roots[i].norm()));
        }
        if largest < 1e-15 {
            converged = true;
            break;
        }
    }
    for w in roots.iter_mut() {
        for _ in 0..2 {
            *w -= step(*w);
        }
    }
    let residual = roots
        .iter()
        .map(|&w| (normalized_q(shape, w) - zhat).norm() / modulus)
        .fold(0.0, f64::max);
    let distinct = (0..l).all(|i| (i + 1..l).all(|j| (roots[i] - roots[j]).norm() > 1e-8));
    if !converged || residual > RESIDUAL_BOUND || !distinct {
        return Err(Error::NonConvergence {
            side: "outer",
            branch: 0,
        });
    }
    Ok(roots)
}

impl RootSet {
    /// All roots, left family first.
    pub fn all(&self) -> impl Iterator<Item = &Complex64> {
        self.left.iter().chain(self.right.iter())
    }

    /// `sum_v Log(w - v)` over the right roots.
    pub fn log_prod_right(&self, w: Complex64) -> Complex64 {
        self.right.iter().map(|&v| (w - v).ln()).sum()
    }

    /// `sum_u Log(w - u)` over the left roots.
    pub fn log_prod_left(&self, w: Complex64) -> Complex64 {
        self.left.iter().map(|&u| (w - u).ln()).sum()
    }

    /// Log of `q'_right(v) = L v^(N-1) (v+1)^(L-N-1) (v+rho) / q_left(v)` for a right root `v`.
    ///
    /// Integer powers are taken as multiples of principal logs, so only the
    /// exponential of the result is meaningful.
    pub fn log_qprime_right(&self, v: Complex64) -> Complex64 {
        let s = &self.shape;
        (s.l() as f64).ln()
            + (s.n() as f64 - 1.0) * v.ln()
            + (s.holes() as f64 - 1.0) * (v + 1.0).ln()
            + (v + s.rho()).ln()
            - self.log_prod_left(v)
    }

    /// Log of `q_z(w) = w^N (w+1)^(L-N) - z^L` evaluated through the
    /// normalisation, i.e. `ln r0^L + Log((-1)^N (normalized_q(w) - zhat))`.
    pub fn log_qz(&self, w: Complex64) -> Complex64 {
        let s = &self.shape;
        let sign = if s.n().is_multiple_of(2) { 1.0 } else { -1.0 };
        s.l() as f64 * s.ln_r0() + (sign * (normalized_q(s, w) - self.zhat)).ln()
    }

    /// `min |Re w + rho|` over all roots.
    pub fn separation(&self) -> f64 {
        let rho = self.shape.rho();
        self.all()
            .map(|w| (w.re + rho).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// The `(d-1)`-to-1 pairing of left roots onto right roots for `L = d N`.
    pub fn flat_partner_map(&self, d: usize) -> Result<FlatPairing> {
        flat_partner_map(self, d)
    }
}

/// Pairing `u -> V(u)` with `v (v+1)^(d-1) = u (u+1)^(d-1)`.
#[derive(Debug, Clone)]
pub struct FlatPairing {
    pub d: usize,
    /// index into `RootSet::right` for each left root
    pub partner: Vec<usize>,
    /// indices into `RootSet::left` for each right root, `d-1` each
    pub preimages: Vec<Vec<usize>>,
}

/// Flat pairing invariant normalised to unit scale:
/// `(-w/rho) ((w+1)/(1-rho))^(d-1)`, whose `N`-th power is `zhat` on the roots.
fn pairing_invariant(d: usize, w: Complex64) -> Complex64 {
    let df = d as f64;
    (-w * df) * ((w + 1.0) * (df / (df - 1.0))).powi(d as i32 - 1)
}

pub fn flat_partner_map(roots: &RootSet, d: usize) -> Result<FlatPairing> {
    let shape = roots.shape;
    if shape.flat_spacing() != Some(d) {
        return Err(Error::ShapeMismatch(format!(
            "pairing needs L = d N, got L={}, N={}, d={d}",
            shape.l(),
            shape.n()
        )));
    }
    let n = shape.n();
    let right_inv: Vec<Complex64> = roots
        .right
        .iter()
        .map(|&v| pairing_invariant(d, v))
        .collect();
    let mut partner = Vec::with_capacity(roots.left.len());
    let mut preimages = vec![Vec::with_capacity(d - 1); n];
    let arg0 = roots.zhat.arg();
    let origin = (n / 2) as i64;
    for (iu, &u) in roots.left.iter().enumerate() {
        let inv = pairing_invariant(d, u);
        // right roots are ordered by branch index b with arg = (arg zhat + 2 pi b)/N
        let b = ((n as f64 * inv.arg() - arg0) / (2.0 * PI)).round() as i64;
        let idx = (b + origin).rem_euclid(n as i64) as usize;
        let dist = (right_inv[idx] - inv).norm();
        if dist > PAIRING_TOL {
            return Err(Error::PairingFailure(format!(
                "left root {iu} has no partner within tolerance (closest {dist:e})"
            )));
        }
        if n > 1 {
            for nb in [(idx + 1) % n, (idx + n - 1) % n] {
                if (right_inv[nb] - inv).norm() <= PAIRING_TOL {
                    return Err(Error::PairingFailure(format!(
                        "left root {iu} matches several right roots"
                    )));
                }
            }
        }
        partner.push(idx);
        preimages[idx].push(iu);
    }
    if let Some((j, p)) = preimages.iter().enumerate().find(|(_, p)| p.len() != d - 1) {
        return Err(Error::PairingFailure(format!(
            "right root {j} has {} preimages, expected {}",
            p.len(),
            d - 1
        )));
    }
    Ok(FlatPairing {
        d,
        partner,
        preimages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn shape_validation() {
        assert!(SystemShape::new(3, 0).is_err());
        assert!(SystemShape::new(3, 3).is_err());
        let s = SystemShape::new(24, 8).unwrap();
        let r = s.rho();
        assert!((s.r0() - (r * r.ln() + (1.0 - r) * (1.0 - r).ln()).exp()).abs() < 1e-16);
        assert_eq!(SystemShape::flat(3, 4).unwrap().l(), 12);
    }

    #[test]
    fn outer_roots_solve_the_root_condition() {
        for (l, n) in [(2, 1), (6, 3), (9, 2), (20, 7)] {
            let s = SystemShape::new(l, n).unwrap();
            for zhat in [c(1.5, 0.0), c(-3.0, 4.0), c(0.0, 40.0), c(1e4, -2.0)] {
                let roots = all_roots(&s, zhat).unwrap();
                assert_eq!(roots.len(), l);
                // sum of roots of w^N (w+1)^(L-N) - z^L is -(L-N)
                let sum: Complex64 = roots.iter().sum();
                assert!(
                    (sum + (l - n) as f64).norm() < 1e-9 * l as f64,
                    "{l} {n} {zhat}: {sum}"
                );
                for w in &roots {
                    assert!((normalized_q(&s, *w) - zhat).norm() < 1e-11 * zhat.norm());
                }
            }
            let inner = all_roots(&s, c(0.3, 0.2)).unwrap();
            assert_eq!(inner.len(), l);
            assert!(all_roots(&s, c(0.6, 0.8)).is_err());
        }
    }

    #[test]
    fn degenerate_z_rejected() {
        let s = SystemShape::new(4, 2).unwrap();
        assert!(matches!(
            solve_bethe_roots(&s, c(0.0, 0.0)),
            Err(Error::DegenerateZ(_))
        ));
        assert!(matches!(
            solve_bethe_roots(&s, c(1.0, 0.0)),
            Err(Error::DegenerateZ(_))
        ));
        let big = SystemShape::new(5000, 10).unwrap();
        assert!(matches!(
            solve_bethe_roots(&big, c(0.5, 0.0)),
            Err(Error::ScaleExceeded { .. })
        ));
    }

    #[test]
    fn two_site_ring_matches_quadratic_formula() {
        let s = SystemShape::new(2, 1).unwrap();
        for zhat in [c(0.5, 0.0), c(0.1, 0.3), c(-0.7, 0.2)] {
            let roots = solve_bethe_roots(&s, zhat).unwrap();
            // z^2 = -r0^2 zhat with r0 = 1/2; w^2 + w - z^2 = 0
            let z2 = -0.25 * zhat;
            let disc = (1.0 + 4.0 * z2).sqrt();
            let w_plus = (-1.0 + disc) / 2.0;
            let w_minus = (-1.0 - disc) / 2.0;
            let (right, left) = if w_plus.re > -0.5 {
                (w_plus, w_minus)
            } else {
                (w_minus, w_plus)
            };
            assert!((roots.right[0] - right).norm() < 1e-13);
            assert!((roots.left[0] - left).norm() < 1e-13);
        }
    }

    #[test]
    fn small_zhat_clusters() {
        let s = SystemShape::new(5, 2).unwrap();
        let roots = solve_bethe_roots(&s, c(1e-9, 0.0)).unwrap();
        assert!(roots.right.iter().all(|v| v.norm() < 0.02));
        assert!(roots.left.iter().all(|u| (u + 1.0).norm() < 0.02));
    }

    #[test]
    fn flat_pairing_d2_is_reflection() {
        let s = SystemShape::flat(2, 5).unwrap();
        let roots = solve_bethe_roots(&s, c(0.3, 0.4)).unwrap();
        let p = roots.flat_partner_map(2).unwrap();
        for (iu, &u) in roots.left.iter().enumerate() {
            assert!((roots.right[p.partner[iu]] - (-1.0 - u)).norm() < 1e-12);
        }
    }

    #[test]
    fn flat_pairing_d3_preimage_counts() {
        let s = SystemShape::flat(3, 1).unwrap();
        let roots = solve_bethe_roots(&s, c(0.5, 0.1)).unwrap();
        let p = roots.flat_partner_map(3).unwrap();
        assert_eq!(p.preimages.len(), 1);
        assert_eq!(p.preimages[0].len(), 2);
    }

    #[test]
    fn pairing_rejects_non_flat_shape() {
        let s = SystemShape::new(5, 2).unwrap();
        let roots = solve_bethe_roots(&s, c(0.5, 0.0)).unwrap();
        assert!(roots.flat_partner_map(2).is_err());
    }

    #[test]
    fn single_factor_products() {
        let s = SystemShape::new(2, 1).unwrap();
        let roots = solve_bethe_roots(&s, c(0.4, -0.2)).unwrap();
        let w = c(0.7, 0.9);
        assert!((roots.log_prod_right(w) - (w - roots.right[0]).ln()).norm() < 1e-15);
        assert!((roots.log_prod_left(w) - (w - roots.left[0]).ln()).norm() < 1e-15);
    }
}
