//! Glue for the command-line tool: CSV tables, curve comparison, settings
//! files and convergence sweeps.

mod compare;
mod config;
mod csv_io;
mod sweep;

pub use compare::{compare_curves, CompareReport};
pub use config::{grid, thread_count, Settings, THREADS_ENV};
pub use csv_io::{
    fmt_float, read_curve, write_finite, write_limit, write_reference, write_roots,
    write_simulation, FINITE_HEADER, LIMIT_HEADER, ROOTS_HEADER, SIM_HEADER, SWEEP_HEADER,
};
pub use sweep::{
    converge_sweep, scaled_comparison, sweep_shape, ScaledComparison, SweepFamily, SweepRow,
    SweepSpec,
};

use crate::error::Result;
use std::io::Write;

pub fn write_sweep<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([
            r.l.to_string(),
            r.n.to_string(),
            fmt_float(r.t),
            fmt_float(r.sup_distance),
            r.points.to_string(),
            r.decreasing.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
