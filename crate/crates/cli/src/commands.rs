use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use ellipk::eval::{validate_point, SeriesKind};
use ellipk::monotonicity::{self, m1_grid, u_grid, MonotonicityReport};
use ellipk::{
    cn_series, dn_series, generate_table, required_table_size, run_sweep, sn_series, CoefficientTable, Complex64,
    EvalResult, SweepConfig, SweepSummary, DEFAULT_TABLE_N,
};
use serde::Serialize;

use crate::output::{open, Sink};
use crate::OutputArgs;

pub const TABLE_ENV: &str = "ELLIPK_TABLE_N";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Exhausted(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => 2,
            CliError::Exhausted(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<ellipk::Error> for CliError {
    fn from(e: ellipk::Error) -> Self {
        let msg = e.to_string();
        match e {
            ellipk::Error::Domain(_) => CliError::Domain(msg),
            ellipk::Error::TableExhausted { .. } => {
                CliError::Exhausted(format!("{msg}; set {TABLE_ENV} to a larger table size"))
            }
            ellipk::Error::Pole { .. } | ellipk::Error::Consistency { .. } => CliError::Verification(msg),
        }
    }
}

/// Whether every check of a completed run held.
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Outcome::Pass => ExitCode::SUCCESS,
            Outcome::Fail => ExitCode::from(4),
        }
    }
}

/// Table size from the environment, or the smallest one that reaches every
/// (tol, series) pair at `radius`, capped at the library default.
fn table_for(radius: f64, needs: &[(f64, SeriesKind)]) -> Result<CoefficientTable, CliError> {
    let n = match std::env::var(TABLE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Domain(format!("{TABLE_ENV}={v:?} is not a nonnegative integer")))?,
        Err(_) => needs
            .iter()
            .map(|&(tol, kind)| required_table_size(radius, tol, kind, DEFAULT_TABLE_N).unwrap_or(DEFAULT_TABLE_N))
            .max()
            .unwrap_or(DEFAULT_TABLE_N),
    };
    Ok(generate_table(n))
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Domain(format!("tolerance {tol} must be positive and finite")))
    }
}

#[derive(Serialize)]
struct EvalOutput {
    #[serde(with = "ellipk::complex_json")]
    z: Complex64,
    #[serde(with = "ellipk::complex_json")]
    m: Complex64,
    tol: f64,
    table_n: usize,
    sn: EvalResult,
    cn: EvalResult,
    dn: EvalResult,
}

pub fn eval(z: Complex64, m: Complex64, tol: f64) -> Result<Outcome, CliError> {
    validate_point(z, m)?;
    check_tol(tol)?;
    let table = table_for(z.norm(), &[(tol, SeriesKind::Value)])?;
    let out = EvalOutput {
        z,
        m,
        tol,
        table_n: table.max_index(),
        sn: sn_series(z, m, tol, &table)?,
        cn: cn_series(z, m, tol, &table)?,
        dn: dn_series(z, m, tol, &table)?,
    };
    let mut w = open(None)?;
    serde_json::to_writer(&mut w, &out).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct VerifySummary {
    #[serde(flatten)]
    sweep: SweepSummary,
    table_n: usize,
}

pub fn verify(config: SweepConfig, out: &OutputArgs) -> Result<Outcome, CliError> {
    config.validate()?;
    let table = table_for(config.radius, &[(config.tol, SeriesKind::Value)])?;
    let mut sink = Sink::new(out.format, out.output.as_deref())?;
    let result = run_sweep(&config, &table, |r| sink.sweep_record(r));
    let summary = match result {
        Ok(s) => s,
        Err(e) => {
            // Keep what was already produced.
            sink.flush()?;
            return Err(e);
        }
    };
    sink.summary(&VerifySummary {
        sweep: summary,
        table_n: table.max_index(),
    })?;
    sink.flush()?;
    Ok(if summary.all_passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

pub struct Grid {
    pub u_count: usize,
    pub m1_count: usize,
    pub u_max: f64,
    pub include_zero: bool,
    pub h: f64,
}

#[derive(Serialize)]
struct MonotoneSummary {
    rows: usize,
    passing_rows: usize,
    degenerate_rows: usize,
    all_pass: bool,
    /// Over non-degenerate rows.
    min_abs_derivative: Option<f64>,
    max_fd_discrepancy: f64,
    table_n: usize,
}

impl MonotoneSummary {
    fn new(rows: &[MonotonicityReport], table_n: usize) -> Self {
        let live = rows.iter().filter(|r| !r.degenerate);
        Self {
            rows: rows.len(),
            passing_rows: rows.iter().filter(|r| r.passes()).count(),
            degenerate_rows: rows.iter().filter(|r| r.degenerate).count(),
            all_pass: rows.iter().all(MonotonicityReport::passes),
            min_abs_derivative: live.map(|r| r.min_abs_derivative).reduce(f64::min),
            max_fd_discrepancy: rows.iter().map(|r| r.max_fd_discrepancy).fold(0.0, f64::max),
            table_n,
        }
    }
}

pub fn monotone(grid: Grid, out: &OutputArgs) -> Result<Outcome, CliError> {
    if !(grid.u_max > 0.0 && grid.u_max < FRAC_PI_2) {
        return Err(CliError::Domain(format!("u-max = {} must satisfy 0 < u-max < π/2", grid.u_max)));
    }
    if grid.m1_count == 0 {
        return Err(CliError::Domain("m1-count must be at least 1".into()));
    }
    if !(grid.h > 0.0 && grid.h <= 0.5) {
        return Err(CliError::Domain(format!("stride h = {} must lie in (0, 0.5]", grid.h)));
    }
    let us = u_grid(grid.u_max, grid.u_count, grid.include_zero);
    let m1s = m1_grid(grid.m1_count);
    let table = table_for(
        grid.u_max,
        &[
            (monotonicity::VALUE_TOL, SeriesKind::Value),
            (monotonicity::DERIVATIVE_TOL, SeriesKind::ParameterDerivative),
        ],
    )?;
    let rows = monotonicity::verify_monotone_with_stride(&us, &m1s, grid.h, &table)?;
    let mut sink = Sink::new(out.format, out.output.as_deref())?;
    for r in &rows {
        sink.monotone_rows(r)?;
    }
    let summary = MonotoneSummary::new(&rows, table.max_index());
    sink.summary(&summary)?;
    sink.flush()?;
    Ok(if summary.all_pass { Outcome::Pass } else { Outcome::Fail })
}

pub fn coeffs(max_index: usize, out: Option<&Path>) -> Result<Outcome, CliError> {
    // Open first so an unwritable path fails before generation.
    let mut w = open(out)?;
    let json = generate_table(max_index).to_json();
    w.write_all(json.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(Outcome::Pass)
}
