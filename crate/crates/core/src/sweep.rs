//! Seeded random sweeps of [`check_theorem`] over |z| ≤ R, |m| ≤ 1.
//!
//! Sample `i` of a sweep with seed `s` is drawn from ChaCha8 seeded with
//! `s` (via `seed_from_u64`) on stream `i`, taking four uniform doubles in
//! the order (r_z, θ_z, r_m, θ_m). Radii are √U-scaled so that points are
//! uniform by area. Every sample is therefore reproducible on its own and
//! independent of thread scheduling.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{check_theorem, BoundReport};
use crate::coeffs::{CoefficientTable, FunctionKind};
use crate::error::{domain, Result};
use crate::eval::DEFAULT_TOL;

pub const DEFAULT_RADIUS: f64 = 1.5;
pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 42;

/// Samples evaluated in parallel before being handed to the sink in order.
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub radius: f64,
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            radius: DEFAULT_RADIUS,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tol: DEFAULT_TOL,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius < FRAC_PI_2) {
            return Err(domain(format!(
                "radius R = {} must satisfy 0 < R < π/2",
                self.radius
            )));
        }
        if self.samples == 0 {
            return Err(domain("samples must be at least 1"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(domain(format!("tolerance {} must be positive and finite", self.tol)));
        }
        Ok(())
    }
}

/// Point `index` of the sweep with the given seed: z uniform in |z| ≤ radius
/// and m uniform in |m| ≤ 1.
pub fn sample_point(seed: u64, index: u64, radius: f64) -> (Complex64, Complex64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut disk = |scale: f64| {
        let r: f64 = rng.random();
        let t: f64 = rng.random();
        Complex64::from_polar(scale * r.sqrt(), TAU * t)
    };
    let z = disk(radius);
    let mut m = disk(1.0);
    let norm = m.norm();
    if norm > 1.0 {
        m /= norm;
    }
    (z, m)
}

/// One sweep sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub index: u64,
    pub seed: u64,
    #[serde(flatten)]
    pub report: BoundReport,
}

/// Smallest margin seen so far and where it occurred.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstMargin {
    pub margin: f64,
    pub function: FunctionKind,
    pub index: u64,
    #[serde(with = "crate::complex_json")]
    pub z: Complex64,
    #[serde(with = "crate::complex_json")]
    pub m: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub samples: u64,
    pub passed: u64,
    pub failed: u64,
    pub seed: u64,
    pub radius: f64,
    pub tol: f64,
    pub worst_margin_sharp: Option<WorstMargin>,
    pub worst_margin_coarse: Option<WorstMargin>,
    pub max_eval_error: f64,
}

impl SweepSummary {
    pub fn new(config: &SweepConfig) -> Self {
        Self {
            samples: 0,
            passed: 0,
            failed: 0,
            seed: config.seed,
            radius: config.radius,
            tol: config.tol,
            worst_margin_sharp: None,
            worst_margin_coarse: None,
            max_eval_error: 0.0,
        }
    }

    pub fn add(&mut self, record: &SweepRecord) {
        let r = &record.report;
        self.samples += 1;
        if r.passes() {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        for (kind, chain) in r.records() {
            let candidate = |margin| WorstMargin {
                margin,
                function: kind,
                index: record.index,
                z: r.z,
                m: r.m,
            };
            if self.worst_margin_sharp.is_none_or(|w| chain.margin_sharp < w.margin) {
                self.worst_margin_sharp = Some(candidate(chain.margin_sharp));
            }
            if self.worst_margin_coarse.is_none_or(|w| chain.margin_coarse < w.margin) {
                self.worst_margin_coarse = Some(candidate(chain.margin_coarse));
            }
            self.max_eval_error = self.max_eval_error.max(chain.eval_error);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs the sweep, handing records to `sink` in index order.
///
/// Stops at the first evaluation error or sink error. Records already given
/// to the sink stay delivered.
pub fn run_sweep<E>(
    config: &SweepConfig,
    table: &CoefficientTable,
    mut sink: impl FnMut(&SweepRecord) -> std::result::Result<(), E>,
) -> std::result::Result<SweepSummary, E>
where
    E: From<crate::Error>,
{
    config.validate()?;
    let mut summary = SweepSummary::new(config);
    let mut start = 0;
    while start < config.samples {
        let end = (start + CHUNK).min(config.samples);
        let chunk: Vec<Result<SweepRecord>> = (start..end)
            .into_par_iter()
            .map(|index| sweep_record(config, index, table))
            .collect();
        for record in chunk {
            let record = record?;
            summary.add(&record);
            sink(&record)?;
        }
        start = end;
    }
    Ok(summary)
}

pub fn sweep_record(config: &SweepConfig, index: u64, table: &CoefficientTable) -> Result<SweepRecord> {
    let (z, m) = sample_point(config.seed, index, config.radius);
    Ok(SweepRecord {
        index,
        seed: config.seed,
        report: check_theorem(z, m, config.tol, table)?,
    })
}
