//! Distance between finite-ring scaled distributions and their limits as `L` grows.

use crate::error::{Error, Result};
use crate::finite_time::{
    flat_scaling, one_point_flat_grid, one_point_step_grid, step_scaling, FredholmOptions,
    ProbabilityResult,
};
use crate::limit_dist::{f1_grid, f2_grid, CurvePoint, DEFAULT_NODE_COUNT};
use crate::quadrature::QuadratureSpec;
use crate::ring_bethe::SystemShape;

/// Which initial condition and limit the sweep follows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepFamily {
    /// flat spacing `d`, compared with `F1(tau^(1/3) x; tau)`
    Flat { d: usize },
    /// step data at density `rho`, compared with `F2(tau^(1/3) x; tau, gamma)`
    Step { rho: f64, gamma: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub sizes: Vec<usize>,
    pub tau: f64,
    pub xs: Vec<f64>,
    /// contour for the finite-ring formulas
    pub finite_quad: QuadratureSpec,
    /// contour for the limit functions
    pub limit_quad: QuadratureSpec,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub l: usize,
    pub n: usize,
    pub t: f64,
    pub sup_distance: f64,
    pub points: usize,
    /// whether the distance is below that of the previous size
    pub decreasing: bool,
}

/// Finite-ring and limiting values on the realized grid of one ring size.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledComparison {
    pub shape: SystemShape,
    pub t: f64,
    pub thresholds: Vec<i64>,
    /// the scaled variable each integer threshold corresponds to
    pub x_realized: Vec<f64>,
    pub finite: Vec<f64>,
    pub limit: Vec<f64>,
    /// contour diagnostics of each finite-ring value
    pub finite_diagnostics: Vec<ProbabilityResult>,
    pub limit_diagnostics: Vec<CurvePoint>,
}

impl ScaledComparison {
    pub fn sup_distance(&self) -> f64 {
        self.finite
            .iter()
            .zip(&self.limit)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Ring shape of the sweep at size `l`; the tagged particle is `k = N`.
pub fn sweep_shape(family: SweepFamily, l: usize) -> Result<SystemShape> {
    match family {
        SweepFamily::Flat { d } => {
            if d < 2 || !l.is_multiple_of(d) {
                return Err(Error::ShapeMismatch(format!(
                    "L = {l} is not a multiple of d = {d}"
                )));
            }
            SystemShape::flat(d, l / d)
        }
        SweepFamily::Step { rho, .. } => {
            let n = rho * l as f64;
            if (n - n.round()).abs() > 1e-9 {
                return Err(Error::ShapeMismatch(format!(
                    "rho L = {n} is not an integer"
                )));
            }
            SystemShape::new(l, n.round() as usize)
        }
    }
}

/// Evaluates the scaled finite-ring distribution at size `l` and the limit
/// function at the realized grid `tau^(1/3) x'`.
pub fn scaled_comparison(spec: &SweepSpec, l: usize) -> Result<ScaledComparison> {
    let shape = sweep_shape(spec.family, l)?;
    let k = shape.n();
    let (t, thresholds, x_realized) = match spec.family {
        SweepFamily::Flat { .. } => {
            let pts = spec
                .xs
                .iter()
                .map(|&x| flat_scaling(spec.tau, x, k, &shape))
                .collect::<Result<Vec<_>>>()?;
            (
                pts[0].t,
                pts.iter().map(|p| p.a).collect::<Vec<_>>(),
                pts.iter().map(|p| p.x_realized).collect::<Vec<_>>(),
            )
        }
        SweepFamily::Step { gamma, .. } => {
            let pts = spec
                .xs
                .iter()
                .map(|&x| step_scaling(spec.tau, gamma, x, k, &shape))
                .collect::<Result<Vec<_>>>()?;
            (
                pts[0].t,
                pts.iter().map(|p| p.a).collect(),
                pts.iter().map(|p| p.x_realized).collect(),
            )
        }
    };
    let opts = FredholmOptions::default();
    let finite = match spec.family {
        SweepFamily::Flat { d } => {
            one_point_flat_grid(d, shape.n(), k, &thresholds, t, &spec.finite_quad, &opts)?
        }
        SweepFamily::Step { .. } => one_point_step_grid(
            shape.l(),
            shape.n(),
            k,
            &thresholds,
            t,
            &spec.finite_quad,
            &opts,
        )?,
    };
    let scale = spec.tau.cbrt();
    let limit_xs: Vec<f64> = x_realized.iter().map(|x| scale * x).collect();
    let limit = match spec.family {
        SweepFamily::Flat { .. } => {
            f1_grid(&limit_xs, spec.tau, &spec.limit_quad, DEFAULT_NODE_COUNT)?
        }
        SweepFamily::Step { gamma, .. } => f2_grid(
            &limit_xs,
            spec.tau,
            gamma,
            &spec.limit_quad,
            DEFAULT_NODE_COUNT,
        )?,
    };
    Ok(ScaledComparison {
        shape,
        t,
        thresholds,
        x_realized,
        finite: finite.iter().map(|r| r.value).collect(),
        limit: limit.values(),
        finite_diagnostics: finite,
        limit_diagnostics: limit.points,
    })
}

/// One row per ring size, in the order given.
pub fn converge_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.xs.is_empty() || spec.sizes.is_empty() {
        return Err(Error::InvalidArgument(
            "sweep needs at least one size and one grid point".into(),
        ));
    }
    let mut rows: Vec<SweepRow> = Vec::with_capacity(spec.sizes.len());
    for &l in &spec.sizes {
        let cmp = scaled_comparison(spec, l)?;
        let d = cmp.sup_distance();
        rows.push(SweepRow {
            l,
            n: cmp.shape.n(),
            t: cmp.t,
            sup_distance: d,
            points: cmp.finite.len(),
            decreasing: rows.last().is_none_or(|prev| d < prev.sup_distance),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(
            sweep_shape(SweepFamily::Flat { d: 2 }, 100).unwrap().n(),
            50
        );
        assert!(sweep_shape(SweepFamily::Flat { d: 3 }, 100).is_err());
        let step = SweepFamily::Step {
            rho: 0.5,
            gamma: 0.2,
        };
        assert_eq!(sweep_shape(step, 64).unwrap().n(), 32);
        assert!(sweep_shape(
            SweepFamily::Step {
                rho: 0.3,
                gamma: 0.0
            },
            64
        )
        .is_err());
    }

    #[test]
    fn small_flat_sweep_runs() {
        let spec = SweepSpec {
            family: SweepFamily::Flat { d: 2 },
            sizes: vec![8, 16],
            tau: 1.0,
            xs: vec![-1.0, 0.0, 1.0],
            finite_quad: QuadratureSpec::new(64, 0.9).unwrap(),
            limit_quad: QuadratureSpec::new(32, 0.5).unwrap(),
        };
        let rows = converge_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows
            .iter()
            .all(|r| r.sup_distance > 0.0 && r.sup_distance < 0.5));
        assert!(rows[0].decreasing);
    }
}
