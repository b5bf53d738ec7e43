//! Command-line front end: `sweep`, `verify` and `simulate`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/config/I-O error, 3 blow-up.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dgsem::{simulate, SolverConfig};
use crate::error::{Error, Result};
use crate::euler::GasModel;
use crate::sweep::{locate_sign_change, run_sweep, write_csv, write_svg, SweepSpec};
use crate::verify::{run_verify, Fault};
use crate::wall::{roe_threshold, WallFluxKind};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BLOW_UP: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "slipwall",
    version,
    about = "Slip-wall boundary fluxes for the compressible Euler equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep P*/P and the wall entropy contribution over the normal Mach number.
    Sweep(SweepArgs),
    /// Run the seeded property suite.
    Verify(VerifyArgs),
    /// Run the 1D DGSEM harness and write its entropy budget.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// |Ma_n| <= 5 (lower end offset by the vacuum guard).
    Wide,
    /// |Ma_n| <= 1.
    Subsonic,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1.4)]
    pub gamma: f64,
    /// Range preset; --ma-min/--ma-max override it.
    #[arg(long, value_enum, default_value_t = Preset::Wide)]
    pub preset: Preset,
    #[arg(long, allow_hyphen_values = true)]
    pub ma_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ma_max: Option<f64>,
    #[arg(long, default_value_t = 2001)]
    pub samples: usize,
    /// Comma-separated wall flux kinds (default: all).
    #[arg(long, value_delimiter = ',')]
    pub kinds: Option<Vec<WallFluxKind>>,
    #[arg(long, default_value_t = 1.0)]
    pub rho_c: f64,
    /// Distance kept from the vacuum limit for ExactRP samples.
    #[arg(long, default_value_t = 1e-3)]
    pub vacuum_eps: f64,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Random samples per property.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, hide = true, default_value = "none")]
    pub inject_fault: Fault,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Solver configuration (key = value lines).
    pub config: PathBuf,
    /// Entropy budget CSV (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

impl SweepArgs {
    pub fn spec(&self) -> Result<SweepSpec> {
        let base = match self.preset {
            Preset::Wide => SweepSpec::default(),
            Preset::Subsonic => SweepSpec::subsonic(),
        };
        Ok(SweepSpec {
            gas: GasModel::new(self.gamma)?,
            ma_min: self.ma_min.unwrap_or(base.ma_min),
            ma_max: self.ma_max.unwrap_or(base.ma_max),
            samples: self.samples,
            kinds: self
                .kinds
                .clone()
                .unwrap_or_else(|| WallFluxKind::ALL.to_vec()),
            rho_c: self.rho_c,
            vacuum_eps: self.vacuum_eps,
        })
    }
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let spec = args.spec()?;
    let rows = run_sweep(&spec)?;
    let mut out = open_out(args.out.as_deref())?;
    match args.format {
        Format::Csv => write_csv(&rows, &mut out)?,
        Format::Svg => write_svg(&spec, &rows, &mut out)?,
    }
    out.flush()?;
    eprintln!(
        "{} rows, {} samples, {} kinds",
        rows.len(),
        spec.grid().len(),
        spec.kinds.len()
    );
    if spec.kinds.contains(&WallFluxKind::Roe) {
        match locate_sign_change(&spec, &rows, WallFluxKind::Roe, 1e-12) {
            Some(m) => eprintln!(
                "Roe delta_s changes sign at Ma_n = {m:.12} (threshold {:.12})",
                roe_threshold(&spec.gas)
            ),
            None => eprintln!("Roe delta_s has no sign change in range"),
        }
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let report = run_verify(args.seed, args.trials, args.inject_fault)?;
    println!("{report}");
    Ok(report.all_passed())
}

/// Returns `true` if the run reached the end time.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<bool> {
    let cfg = SolverConfig::from_file(&args.config)?;
    let run = simulate(&cfg, None)?;
    let mut out = open_out(args.out.as_deref())?;
    run.budget.write_csv(&mut out)?;
    out.flush()?;
    eprintln!(
        "steps {}/{} (dt = {:.6e}), t = {:.6e}",
        run.steps_completed, run.steps_planned, run.dt, run.field.time
    );
    eprintln!(
        "max |defect|                    {:.6e}",
        run.budget.max_abs_defect()
    );
    eprintln!(
        "min boundary contribution       {:.6e}",
        run.budget.min_boundary_contribution()
    );
    eprintln!(
        "negative boundary events        {}",
        run.budget.negative_boundary_events(1e-12)
    );
    eprintln!(
        "total entropy drift             {:.6e}",
        run.budget.entropy_drift()
    );
    match &run.blow_up {
        None => {
            eprintln!("status                          completed");
            Ok(true)
        }
        Some(e) => {
            eprintln!("status                          BLOW-UP: {e}");
            Ok(false)
        }
    }
}

fn exit_for_error(e: &Error) -> u8 {
    match e {
        Error::BlowUp { .. } => EXIT_BLOW_UP,
        _ => EXIT_USAGE,
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let code = match &cli.command {
        Command::Sweep(a) => cmd_sweep(a).map(|_| EXIT_OK),
        Command::Verify(a) => cmd_verify(a).map(|ok| if ok { EXIT_OK } else { EXIT_VERIFY_FAILED }),
        Command::Simulate(a) => cmd_simulate(a).map(|ok| if ok { EXIT_OK } else { EXIT_BLOW_UP }),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for_error(&e))
        }
    }
}
