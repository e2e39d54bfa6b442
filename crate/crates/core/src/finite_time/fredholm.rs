//! Fredholm determinant formulas for the flat (`x_j = j d`, `L = d N`) and
//! step (`x_j = j - N`) initial conditions.
//!
//! Both kernels act on the `L-N` left roots but factor through the `N` right
//! roots, `K = A B`, so `det(I + K) = det(I_N + B A)`. The `N x N` matrix is
//! balanced by a diagonal similarity and indices whose row and column are
//! below `prune_tol` after balancing are dropped.

use super::{adaptive_contour, check_index, check_time, NodeEval, ProbabilityResult};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::quadrature::QuadratureSpec;
use crate::ring_bethe::{solve_bethe_roots, FlatPairing, RootSet, SystemShape};
use num_complex::Complex64;

/// How the Fredholm determinant is formed at each contour node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FredholmOptions {
    /// use the `(L-N) x (L-N)` kernel instead of the reduced `N x N` matrix
    pub full_kernel: bool,
    /// entries of the balanced reduced matrix below this are treated as zero
    pub prune_tol: f64,
}

impl Default for FredholmOptions {
    fn default() -> Self {
        Self {
            full_kernel: false,
            prune_tol: 1e-20,
        }
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Quantities at one contour node that do not depend on the threshold `a`.
///
/// For every root `w`, `log f(w; a) = base(w) - a Log(w+1)`, and the log of
/// the scalar prefactor is `pref_base - a pref_slope`.
struct NodeData {
    roots: RootSet,
    pairing: Option<FlatPairing>,
    base_left: Vec<Complex64>,
    base_right: Vec<Complex64>,
    log1p_left: Vec<Complex64>,
    log1p_right: Vec<Complex64>,
    pref_base: Complex64,
    pref_slope: Complex64,
}

impl NodeData {
    fn log_f(&self, a: i64) -> (Vec<Complex64>, Vec<Complex64>) {
        let af = a as f64;
        let left = self
            .base_left
            .iter()
            .zip(&self.log1p_left)
            .map(|(b, l)| b - af * l)
            .collect();
        let right = self
            .base_right
            .iter()
            .zip(&self.log1p_right)
            .map(|(b, l)| b - af * l)
            .collect();
        (left, right)
    }

    fn log_prefactor(&self, a: i64) -> Complex64 {
        self.pref_base - a as f64 * self.pref_slope
    }
}

/// Shared per-root pieces: `Log(w+1)` and `Log q_right(u)` / `Log q'_right(v)`.
struct RootLogs {
    log1p_left: Vec<Complex64>,
    log1p_right: Vec<Complex64>,
    /// `sum_v Log(u - v)` for left `u`
    qright_left: Vec<Complex64>,
    /// `sum_u Log(v - u)` for right `v`
    qleft_right: Vec<Complex64>,
    /// `Log q'_right(v)` for right `v`
    qprime_right: Vec<Complex64>,
}

impl RootLogs {
    fn new(roots: &RootSet) -> Self {
        let s = roots.shape;
        let qleft_right: Vec<Complex64> = roots
            .right
            .iter()
            .map(|&v| roots.log_prod_left(v))
            .collect();
        let qprime_right = roots
            .right
            .iter()
            .zip(&qleft_right)
            .map(|(&v, ql)| {
                (s.l() as f64).ln()
                    + (s.n() as f64 - 1.0) * v.ln()
                    + (s.holes() as f64 - 1.0) * (v + 1.0).ln()
                    + (v + s.rho()).ln()
                    - ql
            })
            .collect();
        Self {
            log1p_left: roots.left.iter().map(|u| (u + 1.0).ln()).collect(),
            log1p_right: roots.right.iter().map(|v| (v + 1.0).ln()).collect(),
            qright_left: roots
                .left
                .iter()
                .map(|&u| roots.log_prod_right(u))
                .collect(),
            qleft_right,
            qprime_right,
        }
    }
}

fn require_positive_real(base: Complex64, what: &str) -> Result<()> {
    if base.re > 0.0 {
        Ok(())
    } else {
        Err(Error::BranchViolation(format!("{what} = {base}")))
    }
}

/// `log f(w)` without the `-a Log(w+1)` term, for
/// `f(w) = Q(w)^power w^(-N-k+2) (w+1)^(shift) e^(tw) / (w+rho)`.
fn weight_base(
    w: Complex64,
    log_q: Complex64,
    power: f64,
    shift: f64,
    n: usize,
    k: usize,
    t: f64,
    rho: f64,
    log1p: Complex64,
) -> Complex64 {
    power * log_q + (2.0 - n as f64 - k as f64) * w.ln() + shift * log1p + t * w - (w + rho).ln()
}

fn flat_node(shape: &SystemShape, d: usize, k: usize, t: f64, zhat: Complex64) -> Result<NodeData> {
    let roots = solve_bethe_roots(shape, zhat)?;
    let pairing = roots.flat_partner_map(d)?;
    let logs = RootLogs::new(&roots);
    let (n, rho) = (shape.n(), shape.rho());
    let shift = (k + d) as f64;
    let base_left = roots
        .left
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            weight_base(
                u,
                logs.qright_left[i],
                1.0,
                shift,
                n,
                k,
                t,
                rho,
                logs.log1p_left[i],
            )
        })
        .collect();
    let base_right = roots
        .right
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            weight_base(
                v,
                logs.qprime_right[i],
                1.0,
                shift,
                n,
                k,
                t,
                rho,
                logs.log1p_right[i],
            )
        })
        .collect();
    // (v+1)^(-a + kd + L - N - d/2 + 1) (d(v+rho))^(-1/2) e^(tv) / prod_u sqrt(v-u)
    let df = d as f64;
    let e0 = (k * d + shape.holes()) as f64 - df / 2.0 + 1.0;
    let mut pref_base = zero();
    let mut pref_slope = zero();
    for (i, &v) in roots.right.iter().enumerate() {
        require_positive_real(v + 1.0, "v + 1")?;
        require_positive_real(df * (v + rho), "d (v + rho)")?;
        pref_base += e0 * logs.log1p_right[i] - 0.5 * (df * (v + rho)).ln() + t * v
            - 0.5 * logs.qleft_right[i];
        pref_slope += logs.log1p_right[i];
    }
    Ok(NodeData {
        roots,
        pairing: Some(pairing),
        base_left,
        base_right,
        log1p_left: logs.log1p_left,
        log1p_right: logs.log1p_right,
        pref_base,
        pref_slope,
    })
}

fn step_node(shape: &SystemShape, k: usize, t: f64, zhat: Complex64) -> Result<NodeData> {
    let roots = solve_bethe_roots(shape, zhat)?;
    let logs = RootLogs::new(&roots);
    let (n, l, rho) = (shape.n(), shape.l(), shape.rho());
    let shift = k as f64 + 1.0 - n as f64;
    let base_left = roots
        .left
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            weight_base(
                u,
                logs.qright_left[i],
                2.0,
                shift,
                n,
                k,
                t,
                rho,
                logs.log1p_left[i],
            )
        })
        .collect();
    let base_right = roots
        .right
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            weight_base(
                v,
                logs.qprime_right[i],
                2.0,
                shift,
                n,
                k,
                t,
                rho,
                logs.log1p_right[i],
            )
        })
        .collect();
    // prod_u (-u)^(k-1) prod_v (v+1)^(-a+L-2N+k) e^(tv) / prod_{u,v} (v-u)
    let km1 = k as f64 - 1.0;
    let mut pref_base: Complex64 = roots.left.iter().map(|&u| km1 * (-u).ln()).sum();
    let e0 = l as f64 - 2.0 * n as f64 + k as f64;
    let mut pref_slope = zero();
    for (i, &v) in roots.right.iter().enumerate() {
        pref_base += e0 * logs.log1p_right[i] + t * v - logs.qleft_right[i];
        pref_slope += logs.log1p_right[i];
    }
    Ok(NodeData {
        roots,
        pairing: None,
        base_left,
        base_right,
        log1p_left: logs.log1p_left,
        log1p_right: logs.log1p_right,
        pref_base,
        pref_slope,
    })
}

fn log_prune_bound(tol: f64, l: usize) -> f64 {
    tol.ln() - 3.0 * (l as f64).ln()
}

/// `det(I + K)` for the flat kernel `K(u,u') = f(u) / ((u - V(u')) f(V(u')))`.
fn flat_det(node: &NodeData, a: i64, opts: &FredholmOptions) -> Complex64 {
    let roots = &node.roots;
    let pairing = node.pairing.as_ref().expect("flat node carries a pairing");
    let (lf_left, lf_right) = node.log_f(a);
    if opts.full_kernel {
        let m = roots.left.len();
        let k = CMatrix::from_fn(m, |i, j| {
            let vj = pairing.partner[j];
            (lf_left[i] - lf_right[vj]).exp() / (roots.left[i] - roots.right[vj])
        });
        return k.identity_plus(1.0).det();
    }
    // (BA)(v, v'') = sum_{u in U(v)} f(u) / ((u - v'') f(v''))
    let n = roots.right.len();
    let g: Vec<f64> = pairing
        .preimages
        .iter()
        .map(|us| {
            us.iter()
                .map(|&u| lf_left[u].re)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let log_r: Vec<f64> = (0..n).map(|v| 0.5 * (g[v] - lf_right[v].re)).collect();
    let log_h: Vec<f64> = (0..n).map(|v| -0.5 * (g[v] + lf_right[v].re)).collect();
    let r_max = log_r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bound = log_prune_bound(opts.prune_tol, roots.shape.l());
    let kept: Vec<usize> = (0..n).filter(|&v| log_r[v] + r_max > bound).collect();
    let m = CMatrix::from_fn(kept.len(), |i, j| {
        let (v, w) = (kept[i], kept[j]);
        let col = -lf_right[w] - log_h[w] + log_h[v];
        pairing.preimages[v]
            .iter()
            .map(|&u| (lf_left[u] + col).exp() / (roots.left[u] - roots.right[w]))
            .sum()
    });
    m.identity_plus(1.0).det()
}

/// `det(I + K)` for the step kernel `K(u,u') = f(u) sum_v 1 / ((u-v)(u'-v) f(v))`.
fn step_det(node: &NodeData, a: i64, opts: &FredholmOptions) -> Complex64 {
    let roots = &node.roots;
    let (lf_left, lf_right) = node.log_f(a);
    if opts.full_kernel {
        let m = roots.left.len();
        let k = CMatrix::from_fn(m, |i, j| {
            roots
                .right
                .iter()
                .zip(&lf_right)
                .map(|(&v, lv)| {
                    (lf_left[i] - lv).exp() / ((roots.left[i] - v) * (roots.left[j] - v))
                })
                .sum()
        });
        return k.identity_plus(1.0).det();
    }
    // (BA)(v, v'') = sum_u f(u) / ((u - v)(u - v'') f(v'')), balanced by |f(v)|^(-1/2)
    let n = roots.right.len();
    let w_max = lf_left
        .iter()
        .map(|x| x.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let log_r: Vec<f64> = (0..n).map(|v| 0.5 * (w_max - lf_right[v].re)).collect();
    let r_max = log_r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bound = log_prune_bound(opts.prune_tol, roots.shape.l());
    let kept: Vec<usize> = (0..n).filter(|&v| log_r[v] + r_max > bound).collect();
    if kept.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let min_kept = kept
        .iter()
        .map(|&v| lf_right[v].re)
        .fold(f64::INFINITY, f64::min);
    let used: Vec<usize> = (0..lf_left.len())
        .filter(|&u| lf_left[u].re - min_kept > bound)
        .collect();
    let c: Vec<Complex64> = used.iter().map(|&u| (lf_left[u] - w_max).exp()).collect();
    let inv: Vec<Vec<Complex64>> = kept
        .iter()
        .map(|&v| {
            used.iter()
                .map(|&u| (roots.left[u] - roots.right[v]).inv())
                .collect()
        })
        .collect();
    let col_scale: Vec<Complex64> = kept
        .iter()
        .map(|&v| Complex64::from_polar(log_r[v].exp(), -lf_right[v].im))
        .collect();
    let m = CMatrix::from_fn(kept.len(), |i, j| {
        let s: Complex64 = inv[i]
            .iter()
            .zip(&inv[j])
            .zip(&c)
            .map(|((x, y), cu)| x * y * cu)
            .sum();
        s * log_r[kept[i]].exp() * col_scale[j]
    });
    m.identity_plus(1.0).det()
}

fn evaluate_grid<N, D>(
    quad: &QuadratureSpec,
    thresholds: &[i64],
    opts: &FredholmOptions,
    node: N,
    det: D,
) -> Result<Vec<ProbabilityResult>>
where
    N: Fn(Complex64) -> Result<NodeData> + Sync + Send,
    D: Fn(&NodeData, i64, &FredholmOptions) -> Complex64 + Sync + Send,
{
    quad.require_unit_disk()?;
    adaptive_contour(quad, thresholds.len(), |zhat| {
        let data = node(zhat)?;
        let mut values = Vec::with_capacity(thresholds.len());
        let mut logs = Vec::with_capacity(thresholds.len());
        for &a in thresholds {
            let lp = data.log_prefactor(a);
            values.push(lp.exp() * det(&data, a, opts));
            logs.push(lp);
        }
        Ok(NodeEval {
            values,
            log_prefactor: Some(logs),
        })
    })
}

/// `P(x_k(t) >= a)` for flat initial data `x_j(0) = j d` on `L = d N` sites.
pub fn one_point_flat(
    d: usize,
    n: usize,
    k: usize,
    a: i64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ProbabilityResult> {
    Ok(one_point_flat_grid(d, n, k, &[a], t, quad, &FredholmOptions::default())?[0])
}

/// Flat one-point probabilities for every threshold in `thresholds`.
pub fn one_point_flat_grid(
    d: usize,
    n: usize,
    k: usize,
    thresholds: &[i64],
    t: f64,
    quad: &QuadratureSpec,
    opts: &FredholmOptions,
) -> Result<Vec<ProbabilityResult>> {
    check_time(t)?;
    let shape = SystemShape::flat(d, n)?;
    check_index(k, n)?;
    evaluate_grid(
        quad,
        thresholds,
        opts,
        |z| flat_node(&shape, d, k, t, z),
        flat_det,
    )
}

/// `P(x_k(t) >= a)` for step initial data `x_j(0) = j - N`.
pub fn one_point_step(
    l: usize,
    n: usize,
    k: usize,
    a: i64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ProbabilityResult> {
    Ok(one_point_step_grid(l, n, k, &[a], t, quad, &FredholmOptions::default())?[0])
}

/// Step one-point probabilities for every threshold in `thresholds`.
pub fn one_point_step_grid(
    l: usize,
    n: usize,
    k: usize,
    thresholds: &[i64],
    t: f64,
    quad: &QuadratureSpec,
    opts: &FredholmOptions,
) -> Result<Vec<ProbabilityResult>> {
    check_time(t)?;
    let shape = SystemShape::new(l, n)?;
    check_index(k, n)?;
    evaluate_grid(
        quad,
        thresholds,
        opts,
        |z| step_node(&shape, k, t, z),
        step_det,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poisson_tail(t: f64, j: i64) -> f64 {
        if j <= 0 {
            return 1.0;
        }
        let mut p = (-t).exp();
        let mut below = 0.0;
        for i in 0..j {
            below += p;
            p *= t / (i + 1) as f64;
        }
        1.0 - below
    }

    #[test]
    fn two_site_flat_is_shifted_poisson() {
        let quad = QuadratureSpec::new(32, 0.5).unwrap();
        for a in 1..7 {
            let p = one_point_flat(2, 1, 1, a, 1.0, &quad).unwrap();
            assert!(
                (p.value - poisson_tail(1.0, a - 2)).abs() < 1e-10,
                "a={a}: {}",
                p.value
            );
        }
    }

    #[test]
    fn two_site_step_is_poisson() {
        let quad = QuadratureSpec::new(32, 0.5).unwrap();
        for a in -1..6 {
            let p = one_point_step(2, 1, 1, a, 1.3, &quad).unwrap();
            assert!(
                (p.value - poisson_tail(1.3, a)).abs() < 1e-10,
                "a={a}: {}",
                p.value
            );
        }
    }

    #[test]
    fn reduced_matches_full_kernel() {
        let quad = QuadratureSpec::new(32, 0.5).unwrap();
        let full = FredholmOptions {
            full_kernel: true,
            ..Default::default()
        };
        let a: Vec<i64> = (2..12).collect();
        let r = one_point_flat_grid(3, 4, 2, &a, 2.0, &quad, &FredholmOptions::default()).unwrap();
        let f = one_point_flat_grid(3, 4, 2, &a, 2.0, &quad, &full).unwrap();
        for (x, y) in r.iter().zip(&f) {
            assert!((x.value - y.value).abs() < 1e-9);
        }
        let a: Vec<i64> = (-3..8).collect();
        let r = one_point_step_grid(9, 4, 3, &a, 2.5, &quad, &FredholmOptions::default()).unwrap();
        let f = one_point_step_grid(9, 4, 3, &a, 2.5, &quad, &full).unwrap();
        for (x, y) in r.iter().zip(&f) {
            assert!((x.value - y.value).abs() < 1e-9);
        }
    }
}
