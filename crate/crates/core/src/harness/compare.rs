//! Distances between two distribution functions tabulated on one grid.

use crate::error::{Error, Result};

/// Outcome of comparing two tabulated distribution functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareReport {
    /// `max |F_a - F_b|` after clipping both to `[0, 1]`
    pub ks_statistic: f64,
    /// `max |F_a - F_b|` on the raw values
    pub sup_pointwise: f64,
    pub n_points: usize,
    pub threshold: f64,
    pub pass: bool,
}

/// Compares two curves whose grids must match exactly, row by row.
pub fn compare_curves(a: &[(f64, f64)], b: &[(f64, f64)], threshold: f64) -> Result<CompareReport> {
    if a.len() != b.len() {
        let row = a.len().min(b.len());
        let at = |c: &[(f64, f64)]| c.get(row).map_or(f64::NAN, |p| p.0);
        return Err(Error::GridMismatch {
            row,
            a: at(a),
            b: at(b),
        });
    }
    let mut ks: f64 = 0.0;
    let mut sup: f64 = 0.0;
    for (row, (&(xa, fa), &(xb, fb))) in a.iter().zip(b).enumerate() {
        if xa != xb {
            return Err(Error::GridMismatch { row, a: xa, b: xb });
        }
        ks = ks.max((fa.clamp(0.0, 1.0) - fb.clamp(0.0, 1.0)).abs());
        sup = sup.max((fa - fb).abs());
    }
    Ok(CompareReport {
        ks_statistic: ks,
        sup_pointwise: sup,
        n_points: a.len(),
        threshold,
        pass: ks <= threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_curves() {
        let c = [(0.0, 0.1), (1.0, 0.6)];
        let r = compare_curves(&c, &c, 0.0).unwrap();
        assert_eq!(
            (r.ks_statistic, r.sup_pointwise, r.n_points, r.pass),
            (0.0, 0.0, 2, true)
        );
    }

    #[test]
    fn single_perturbation() {
        let a = [(0.0, 0.1), (1.0, 0.6), (2.0, 0.9)];
        let mut b = a;
        b[1].1 += 0.05;
        let r = compare_curves(&a, &b, 0.01).unwrap();
        assert!((r.ks_statistic - 0.05).abs() < 1e-15);
        assert!(!r.pass);
    }

    #[test]
    fn clipping_only_affects_ks() {
        let r = compare_curves(&[(0.0, 1.0 + 1e-7)], &[(0.0, 1.0)], 0.0).unwrap();
        assert_eq!(r.ks_statistic, 0.0);
        assert!(r.sup_pointwise > 0.0);
    }

    #[test]
    fn grid_mismatch() {
        let e = compare_curves(&[(0.0, 0.1), (1.0, 0.2)], &[(0.0, 0.1), (1.5, 0.2)], 0.1);
        assert_eq!(
            e,
            Err(Error::GridMismatch {
                row: 1,
                a: 1.0,
                b: 1.5
            })
        );
        assert!(compare_curves(&[(0.0, 0.1)], &[], 0.1).is_err());
    }
}
