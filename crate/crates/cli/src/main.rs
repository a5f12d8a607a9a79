use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use spincorr_core::sweep::{
    parse_angle, parse_n_range, run_sweep, write_csv, Grid, SweepRecord, SweepSpec,
};
use spincorr_core::SpinError;

const EXIT_ARGUMENT: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;

/// Quantum-correlation sweeps over evolved atomic coherent states.
///
/// Angles take raw radians or pi literals (`pi/4`, `3pi/4`).
#[derive(Debug, Parser)]
#[command(name = "spincorr", version)]
struct Cli {
    #[command(subcommand)]
    mode: Mode,
}

#[derive(Debug, Subcommand)]
enum Mode {
    /// One row per cat order m, at tau = pi/m.
    Table(TableArgs),
    /// One row per atom number per tau.
    SweepN(SweepNArgs),
    /// One row per theta per atom number.
    SweepTheta(SweepThetaArgs),
    /// One row per tau.
    SweepTau(SweepTauArgs),
    /// A single parameter point.
    Point(PointArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Write CSV here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Exit with status 3 if any row has a degenerate mean-spin frame.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value = "pi/4", value_parser = angle)]
    theta: f64,
    #[arg(long, default_value = "0", value_parser = angle)]
    phi: f64,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8,9,10")]
    m_list: Vec<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct SweepNArgs {
    /// Inclusive range A:B.
    #[arg(long, default_value = "2:10", value_parser = n_range)]
    n_range: (usize, usize),
    #[arg(long, default_value = "pi/4", value_parser = angle)]
    theta: f64,
    #[arg(long, default_value = "0", value_parser = angle)]
    phi: f64,
    /// Comma-separated list.
    #[arg(long, value_delimiter = ',', default_value = "pi/8,pi/6,pi/4", value_parser = angle)]
    tau: Vec<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct SweepThetaArgs {
    /// Comma-separated list.
    #[arg(long, value_delimiter = ',', default_value = "5,6")]
    n: Vec<usize>,
    /// A:B:STEP, inclusive.
    #[arg(long, default_value = "pi/314:pi:pi/314", value_parser = grid)]
    theta_range: Grid,
    #[arg(long, default_value = "0", value_parser = angle)]
    phi: f64,
    #[arg(long, default_value = "pi/3", value_parser = angle)]
    tau: f64,
    /// Admit theta = 0 in the range.
    #[arg(long)]
    allow_pole: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct SweepTauArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value = "pi/4", value_parser = angle)]
    theta: f64,
    #[arg(long, default_value = "0", value_parser = angle)]
    phi: f64,
    /// A:B:STEP, inclusive.
    #[arg(long, default_value = "0:7:0.01", value_parser = grid)]
    tau_range: Grid,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value = "pi/4", value_parser = angle)]
    theta: f64,
    #[arg(long, default_value = "0", value_parser = angle)]
    phi: f64,
    #[arg(long, value_parser = angle)]
    tau: f64,
    #[command(flatten)]
    output: Output,
}

fn angle(s: &str) -> Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

fn n_range(s: &str) -> Result<(usize, usize), String> {
    parse_n_range(s).map_err(|e| e.to_string())
}

fn grid(s: &str) -> Result<Grid, String> {
    Grid::parse(s).map_err(|e| e.to_string())
}

impl Mode {
    fn into_parts(self) -> (SweepSpec, Output) {
        match self {
            Mode::Table(a) => (
                SweepSpec::Table {
                    n: a.n,
                    theta: a.theta,
                    phi: a.phi,
                    m_list: a.m_list,
                },
                a.output,
            ),
            Mode::SweepN(a) => (
                SweepSpec::SweepN {
                    n_start: a.n_range.0,
                    n_end: a.n_range.1,
                    theta: a.theta,
                    phi: a.phi,
                    taus: a.tau,
                },
                a.output,
            ),
            Mode::SweepTheta(a) => (
                SweepSpec::SweepTheta {
                    ns: a.n,
                    thetas: a.theta_range,
                    phi: a.phi,
                    tau: a.tau,
                    allow_pole: a.allow_pole,
                },
                a.output,
            ),
            Mode::SweepTau(a) => (
                SweepSpec::SweepTau {
                    n: a.n,
                    theta: a.theta,
                    phi: a.phi,
                    taus: a.tau_range,
                },
                a.output,
            ),
            Mode::Point(a) => (
                SweepSpec::Point {
                    n: a.n,
                    theta: a.theta,
                    phi: a.phi,
                    tau: a.tau,
                },
                a.output,
            ),
        }
    }
}

/// Writes next to the target and renames, so readers never see a partial file.
fn write_atomic(path: &Path, records: &[SweepRecord]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temp file in {}", dir.display()))?;
    write_csv(records, io::BufWriter::new(tmp.as_file_mut()))?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn emit(records: &[SweepRecord], out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => write_atomic(path, records),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_csv(records, io::BufWriter::new(&mut lock))?;
            lock.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (spec, output) = cli.mode.into_parts();

    let records = match run_sweep(&spec, output.threads) {
        Ok(r) => r,
        Err(e @ (SpinError::DegenerateFrame { .. } | SpinError::NegativeVariance { .. })) => {
            eprintln!("spincorr: numerical failure: {e}");
            return ExitCode::from(EXIT_DEGENERATE);
        }
        Err(e) => {
            eprintln!("spincorr: {e}");
            return ExitCode::from(EXIT_ARGUMENT);
        }
    };

    if let Err(e) = emit(&records, output.out.as_deref()) {
        eprintln!("spincorr: {e:#}");
        return ExitCode::FAILURE;
    }

    let degenerate = records.iter().filter(|r| r.degenerate).count();
    if degenerate > 0 {
        eprintln!("spincorr: {degenerate} row(s) with a degenerate mean-spin frame");
        if output.strict {
            return ExitCode::from(EXIT_DEGENERATE);
        }
    }
    ExitCode::SUCCESS
}
