mod commands;
mod complex;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ellipk::Complex64;

use crate::complex::parse_complex;

/// Jacobi elliptic functions from exact Maclaurin coefficients, with sweeps
/// that check the bounds |sn(z,m)| ≤ sn/cn(|z|, 1-|m|) ≤ tan|z| and their
/// cn, dn analogues.
///
/// The coefficient table size defaults to the smallest one that reaches the
/// requested tolerance on the requested domain (at most 360); set
/// ELLIPK_TABLE_N to override it.
#[derive(Debug, Parser)]
#[command(name = "ellipk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate sn, cn, dn at one point and print one JSON object.
    Eval {
        /// Argument, |z| < π/2, as a+bi.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        /// Parameter, |m| ≤ 1, as a+bi.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        m: Complex64,
        #[arg(long, default_value_t = ellipk::DEFAULT_TOL)]
        tol: f64,
    },
    /// Check the bound chains on random points of |z| ≤ R, |m| ≤ 1.
    Verify {
        /// Radius of the z disk; must be below π/2.
        #[arg(long = "R", visible_alias = "radius", default_value_t = ellipk::sweep::DEFAULT_RADIUS)]
        radius: f64,
        #[arg(long, default_value_t = ellipk::sweep::DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = ellipk::sweep::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = ellipk::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check that sn/cn, 1/cn and dn/cn decrease in m1 on a grid.
    Monotone {
        /// Number of u points u_max·i/count, i = 1..=count.
        #[arg(long, default_value_t = ellipk::monotonicity::DEFAULT_U_COUNT)]
        u_count: usize,
        /// Number of evenly spaced m1 points in [0, 1].
        #[arg(long, default_value_t = ellipk::monotonicity::DEFAULT_M1_COUNT)]
        m1_count: usize,
        #[arg(long, default_value_t = ellipk::monotonicity::DEFAULT_U_MAX)]
        u_max: f64,
        /// Also report the degenerate u = 0 row.
        #[arg(long)]
        include_zero: bool,
        /// Finite-difference stride for the derivative cross-check.
        #[arg(long, default_value_t = ellipk::monotonicity::DEFAULT_STRIDE)]
        h: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write the exact coefficient table as JSON.
    Coeffs {
        /// Largest index n.
        #[arg(long = "n", short = 'n')]
        max_index: usize,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, clap::Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::JsonLines)]
    format: Format,
    /// Output file; standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    JsonLines,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { z, m, tol } => commands::eval(z, m, tol),
        Command::Verify {
            radius,
            samples,
            seed,
            tol,
            out,
        } => commands::verify(
            ellipk::SweepConfig {
                radius,
                samples,
                seed,
                tol,
            },
            &out,
        ),
        Command::Monotone {
            u_count,
            m1_count,
            u_max,
            include_zero,
            h,
            out,
        } => commands::monotone(
            commands::Grid {
                u_count,
                m1_count,
                u_max,
                include_zero,
                h,
            },
            &out,
        ),
        Command::Coeffs { max_index, out } => commands::coeffs(max_index, out.as_deref()),
    };
    match result {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
