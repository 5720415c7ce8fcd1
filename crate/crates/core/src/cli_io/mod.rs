//! Command line: `weyllab <verify|fields|observables|waveform|separation>`.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage, config
//! or I/O error.

pub mod config;
pub mod emit;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::em_gauge::{FieldFamily, GaugeFunction, PotentialAssembly};
use crate::error::Error;
use crate::exec;
use crate::fd::{FDSpec, Order};
use crate::verifier::{
    convergence_order, convergence_steps, degeneracy_sweep, field_crosscheck, negative_controls, random_gauges,
    residual_sweep, Grid, ResidualReport,
};

pub use config::{emit_config, parse_config, parse_str, ConfigError, RunConfig};
pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "weyllab", version, about = "Degenerate Dirac/Weyl solutions: verification and data emission")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Fields,
    Observables,
    Waveform,
    Separation,
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (default: current directory).
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_parser = ["2", "4"])]
    pub order: Option<String>,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residual, degeneracy and negative-control suite; writes report.json.
    Verify(CommonArgs),
    /// Closed-form E and B with FD cross-check; writes fields.csv.
    Fields(CommonArgs),
    /// Density, spin and helicity along the propagation line; writes observables.csv.
    Observables(CommonArgs),
    /// First spinor component along w; writes waveform.csv.
    Waveform(CommonArgs),
    /// Separation field map of a transverse profile; writes fieldmap.csv.
    Separation(CommonArgs),
}

impl Command {
    fn parts(&self) -> (CommandKind, &CommonArgs) {
        match self {
            Command::Verify(a) => (CommandKind::Verify, a),
            Command::Fields(a) => (CommandKind::Fields, a),
            Command::Observables(a) => (CommandKind::Observables, a),
            Command::Waveform(a) => (CommandKind::Waveform, a),
            Command::Separation(a) => (CommandKind::Separation, a),
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Domain(e) => write!(f, "{e}"),
            RunError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Domain(e)
    }
}

/// Apply `--order` and `--step` on top of the file's verification settings.
pub fn apply_overrides(cfg: &mut RunConfig, order: Option<&str>, step: Option<f64>) -> Result<(), RunError> {
    let bad = |key: &str, message: String| {
        RunError::Config(ConfigError {
            file: "<command line>".into(),
            line: None,
            key: Some(key.into()),
            message,
        })
    };
    if let Some(o) = order {
        let n: u32 = o.parse().map_err(|_| bad("order", format!("must be 2 or 4, got {o}")))?;
        cfg.verify.fd.order = Order::from_int(n).map_err(|e| bad("order", e.to_string()))?;
    }
    if let Some(h) = step {
        cfg.verify.fd = FDSpec::new(cfg.verify.fd.order, h).map_err(|e| bad("step", e.to_string()))?;
    }
    Ok(())
}

pub fn verification_grid(cfg: &RunConfig) -> Grid {
    Grid {
        center: cfg.solution.locus().coords(),
        half_width: [cfg.verify.half_width; 4],
        points: cfg.verify.points,
    }
}

/// The gauge functions swept by `verify`: the configured one (if nonzero)
/// followed by the seeded random samples.
pub fn sweep_gauges(cfg: &RunConfig) -> Vec<GaugeFunction> {
    let mut g = Vec::new();
    if cfg.potential.gauge != GaugeFunction::Zero {
        g.push(cfg.potential.gauge.clone());
    }
    g.extend(random_gauges(cfg.verify.seed, cfg.verify.gauge_samples));
    g
}

/// Full verification suite for one configuration.
pub fn verify(cfg: &RunConfig) -> Result<Report, RunError> {
    let sol = &cfg.solution;
    sol.validate()?;
    let v = &cfg.verify;
    let grid = verification_grid(cfg);
    let base = PotentialAssembly::for_solution(sol, GaugeFunction::Zero);
    let gauges = sweep_gauges(cfg);
    let mut rep: ResidualReport = if gauges.is_empty() {
        residual_sweep(sol, &base, cfg.mass, &grid, &v.fd, v.threshold)?
    } else {
        degeneracy_sweep(sol, &base, &gauges, cfg.mass, &grid, &v.fd, v.threshold)?
    };
    let pot = PotentialAssembly::for_solution(sol, cfg.potential.gauge.clone());
    let order = v.fd.order;
    rep.convergence_order = match convergence_order(
        |h| {
            let fd = FDSpec::new(order, h)?;
            Ok(residual_sweep(sol, &pot, cfg.mass, &grid, &fd, v.threshold)?.max_norm)
        },
        &convergence_steps(v.fd.h()),
    ) {
        Ok(p) => Some(p),
        Err(Error::FloorDominated { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let controls = negative_controls(sol, &grid, &v.fd, v.threshold)?;
    let suite = report::SuiteInfo {
        name: "verify".into(),
        family: sol.label(),
        mass: cfg.mass.value(),
        threshold: v.threshold,
        gauge_samples: gauges.len(),
        baseline_max_residual: rep.baseline_max,
    };
    Ok(Report::new(suite, &rep, controls))
}

fn write(path: PathBuf, text: &str) -> Result<(), RunError> {
    emit::write_atomic(&path, text.as_bytes()).map_err(|e| RunError::Io(path, e))
}

/// Run one subcommand; returns the exit code.
pub fn execute(kind: CommandKind, cfg: &RunConfig, out: &Path) -> Result<i32, RunError> {
    match kind {
        CommandKind::Verify => {
            let rep = verify(cfg)?;
            write(out.join("report.json"), &rep.to_json())?;
            Ok(if rep.pass { EXIT_OK } else { EXIT_FAIL })
        }
        CommandKind::Fields => {
            let grid = verification_grid(cfg);
            let table = emit::fields(cfg, &grid)?;
            write(out.join("fields.csv"), &table.to_csv())?;
            let family = FieldFamily::for_solution(&cfg.solution);
            let check = field_crosscheck(
                &family,
                &cfg.potential.gauge,
                cfg.potential.q,
                &grid,
                &cfg.verify.fd,
                cfg.verify.field_threshold,
            )?;
            Ok(if check.pass { EXIT_OK } else { EXIT_FAIL })
        }
        CommandKind::Observables => {
            write(out.join("observables.csv"), &emit::observables(cfg).to_csv())?;
            Ok(EXIT_OK)
        }
        CommandKind::Waveform => {
            write(out.join("waveform.csv"), &emit::waveform(cfg).to_csv())?;
            Ok(EXIT_OK)
        }
        CommandKind::Separation => {
            write(out.join("fieldmap.csv"), &emit::fieldmap(cfg)?.to_csv())?;
            Ok(EXIT_OK)
        }
    }
}

fn thread_cap() -> Option<usize> {
    std::env::var("WEYLLAB_THREADS").ok()?.trim().parse().ok()
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let (kind, args) = cli.command.parts();
    let result = (|| {
        let mut cfg = parse_config(&args.config).map_err(RunError::Config)?;
        apply_overrides(&mut cfg, args.order.as_deref(), args.step)?;
        exec::with_threads(thread_cap(), || execute(kind, &cfg, &args.out))
    })();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("weyllab: {e}");
            EXIT_USAGE
        }
    }
}
