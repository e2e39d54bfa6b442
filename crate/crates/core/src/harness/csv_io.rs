//! CSV tables with mandatory headers and 17-significant-digit floats.

use crate::error::{Error, Result};
use crate::finite_time::ProbabilityResult;
use crate::limit_dist::CurvePoint;
use crate::ring_bethe::RootSet;
use crate::tasep_sim::EmpiricalRow;
use std::io::{Read, Write};

pub const ROOTS_HEADER: [&str; 4] = ["side", "re", "im", "residual"];
pub const FINITE_HEADER: [&str; 3] = ["a", "prob", "imag_residue"];
pub const LIMIT_HEADER: [&str; 5] = ["x", "value", "imag_residue", "m_used", "M_used"];
pub const SIM_HEADER: [&str; 5] = [
    "threshold",
    "empirical_prob",
    "ci_low",
    "ci_high",
    "samples",
];
pub const SWEEP_HEADER: [&str; 6] = [
    "big_l",
    "big_n",
    "t",
    "sup_distance",
    "points",
    "decreasing",
];

/// `x` in scientific notation with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer<W: Write>(out: W, header: &[&str]) -> Result<csv::Writer<W>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    Ok(w)
}

pub fn write_roots<W: Write>(out: W, roots: &RootSet) -> Result<()> {
    let mut w = writer(out, &ROOTS_HEADER)?;
    for (side, set) in [("left", &roots.left), ("right", &roots.right)] {
        for v in set {
            let residual = crate::ring_bethe::normalized_q(&roots.shape, *v) - roots.zhat;
            w.write_record([
                side.to_string(),
                fmt_float(v.re),
                fmt_float(v.im),
                fmt_float(residual.norm()),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_finite<W: Write>(
    out: W,
    thresholds: &[i64],
    results: &[ProbabilityResult],
) -> Result<()> {
    let mut w = writer(out, &FINITE_HEADER)?;
    for (a, r) in thresholds.iter().zip(results) {
        w.write_record([a.to_string(), fmt_float(r.value), fmt_float(r.imag_residue)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_limit<W: Write>(out: W, points: &[CurvePoint]) -> Result<()> {
    let mut w = writer(out, &LIMIT_HEADER)?;
    for p in points {
        w.write_record([
            fmt_float(p.x),
            fmt_float(p.value),
            fmt_float(p.imag_residue),
            p.m_used.to_string(),
            p.nodes_used.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// A reference curve tabulated on the same grid, in the limit layout with
/// zero diagnostics.
pub fn write_reference<W: Write>(out: W, xs: &[f64], values: &[f64]) -> Result<()> {
    let mut w = writer(out, &LIMIT_HEADER)?;
    for (x, v) in xs.iter().zip(values) {
        w.write_record([
            fmt_float(*x),
            fmt_float(*v),
            fmt_float(0.0),
            "0".into(),
            "0".into(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_simulation<W: Write>(out: W, rows: &[EmpiricalRow]) -> Result<()> {
    let mut w = writer(out, &SIM_HEADER)?;
    for r in rows {
        w.write_record([
            r.threshold.to_string(),
            fmt_float(r.prob),
            fmt_float(r.ci_low),
            fmt_float(r.ci_high),
            r.samples.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One `(grid, value)` pair per row, read from the first two columns.
pub fn read_curve<R: Read>(input: R) -> Result<Vec<(f64, f64)>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |j: usize| -> Result<f64> {
            let s = rec.get(j).ok_or_else(|| {
                Error::InvalidArgument(format!("row {} has fewer than two columns", i + 1))
            })?;
            s.trim()
                .parse()
                .map_err(|e| Error::InvalidArgument(format!("row {}: {s:?}: {e}", i + 1)))
        };
        out.push((field(0)?, field(1)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn simulation_table_reads_back() {
        let rows = [EmpiricalRow {
            threshold: 3,
            prob: 0.25,
            ci_low: 0.2,
            ci_high: 0.3,
            samples: 400,
        }];
        let mut buf = Vec::new();
        write_simulation(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("threshold,empirical_prob,ci_low,ci_high,samples\n"));
        assert_eq!(read_curve(buf.as_slice()).unwrap(), vec![(3.0, 0.25)]);
    }

    #[test]
    fn malformed_rows_rejected() {
        assert!(read_curve("a,prob\n1,x\n".as_bytes()).is_err());
        assert!(read_curve("a\n1\n".as_bytes()).is_err());
    }
}
