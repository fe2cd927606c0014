use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use ellipk::bounds::ChainRecord;
use ellipk::{MonotonicityReport, SweepRecord};
use serde::Serialize;

use crate::commands::CliError;
use crate::Format;

pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Records as JSON lines or CSV. Summaries go to the same stream as a last
/// JSON line, or to stderr in CSV mode so the CSV stays rectangular.
pub enum Sink {
    JsonLines(Box<dyn Write>),
    Csv(csv::Writer<Box<dyn Write>>),
}

impl Sink {
    pub fn new(format: Format, path: Option<&Path>) -> Result<Self, CliError> {
        let w = open(path)?;
        Ok(match format {
            Format::JsonLines => Sink::JsonLines(w),
            Format::Csv => Sink::Csv(csv::Writer::from_writer(w)),
        })
    }

    fn json<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<(), CliError> {
        serde_json::to_writer(&mut *w, value).map_err(|e| CliError::Io(e.to_string()))?;
        w.write_all(b"\n").map_err(io_error)
    }

    pub fn sweep_record(&mut self, r: &SweepRecord) -> Result<(), CliError> {
        match self {
            Sink::JsonLines(w) => Self::json(w, r),
            Sink::Csv(w) => w.serialize(SweepRow::from(r)).map_err(csv_error),
        }
    }

    pub fn monotone_rows(&mut self, r: &MonotonicityReport) -> Result<(), CliError> {
        match self {
            Sink::JsonLines(w) => Self::json(w, r),
            Sink::Csv(w) => {
                for (i, &m1) in r.m1_grid.iter().enumerate() {
                    w.serialize(MonotoneRow {
                        u: r.u,
                        m1,
                        df1: r.df1[i],
                        df2: r.df2[i],
                        df3: r.df3[i],
                        all_negative: r.all_negative,
                        sampled_decreasing: r.sampled_decreasing,
                        degenerate: r.degenerate,
                    })
                    .map_err(csv_error)?;
                }
                Ok(())
            }
        }
    }

    pub fn summary<T: Serialize>(&mut self, summary: &T) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Wrapped<'a, T> {
            summary: &'a T,
        }
        let wrapped = Wrapped { summary };
        match self {
            Sink::JsonLines(w) => Self::json(w, &wrapped),
            Sink::Csv(_) => Self::json(&mut io::stderr().lock(), &wrapped),
        }
    }

    pub fn flush(&mut self) -> Result<(), CliError> {
        match self {
            Sink::JsonLines(w) => w.flush().map_err(io_error),
            Sink::Csv(w) => w.flush().map_err(io_error),
        }
    }
}

fn io_error(e: io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// CSV column order for `verify`.
#[derive(Serialize)]
struct SweepRow {
    index: u64,
    seed: u64,
    z_re: f64,
    z_im: f64,
    m_re: f64,
    m_im: f64,
    m1: f64,
    equality_case: ellipk::EqualityCase,
    pass: bool,
    sn_lhs: f64,
    sn_sharp: f64,
    sn_coarse: f64,
    sn_margin_sharp: f64,
    sn_margin_coarse: f64,
    sn_eval_error: f64,
    cn_lhs: f64,
    cn_sharp: f64,
    cn_coarse: f64,
    cn_margin_sharp: f64,
    cn_margin_coarse: f64,
    cn_eval_error: f64,
    dn_lhs: f64,
    dn_sharp: f64,
    dn_coarse: f64,
    dn_margin_sharp: f64,
    dn_margin_coarse: f64,
    dn_eval_error: f64,
}

impl From<&SweepRecord> for SweepRow {
    fn from(r: &SweepRecord) -> Self {
        let b = &r.report;
        let parts = |c: &ChainRecord| (c.lhs, c.sharp, c.coarse, c.margin_sharp, c.margin_coarse, c.eval_error);
        let s = parts(&b.sn);
        let c = parts(&b.cn);
        let d = parts(&b.dn);
        Self {
            index: r.index,
            seed: r.seed,
            z_re: b.z.re,
            z_im: b.z.im,
            m_re: b.m.re,
            m_im: b.m.im,
            m1: b.m1,
            equality_case: b.equality_case,
            pass: b.passes(),
            sn_lhs: s.0,
            sn_sharp: s.1,
            sn_coarse: s.2,
            sn_margin_sharp: s.3,
            sn_margin_coarse: s.4,
            sn_eval_error: s.5,
            cn_lhs: c.0,
            cn_sharp: c.1,
            cn_coarse: c.2,
            cn_margin_sharp: c.3,
            cn_margin_coarse: c.4,
            cn_eval_error: c.5,
            dn_lhs: d.0,
            dn_sharp: d.1,
            dn_coarse: d.2,
            dn_margin_sharp: d.3,
            dn_margin_coarse: d.4,
            dn_eval_error: d.5,
        }
    }
}

/// CSV for `monotone`: one line per (u, m1) point.
#[derive(Serialize)]
struct MonotoneRow {
    u: f64,
    m1: f64,
    df1: f64,
    df2: f64,
    df3: f64,
    all_negative: bool,
    sampled_decreasing: bool,
    degenerate: bool,
}
