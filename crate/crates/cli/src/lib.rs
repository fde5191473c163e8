//! Front end for `cpshift`: parameter sweeps, bulk/edge/vertex reports,
//! asymptotic laws, the diagram identity check and power-law fits.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 numerical
//! failure, 3 verification failure.

pub mod commands;
pub mod config;
pub mod error;
pub mod sweep;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cpshift::diagrams::ProcessId;

use crate::commands::FitMode;
use crate::config::{Config, THREADS_ENV};
pub use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "cpshift", version, about = "Casimir-Polder shifts above a square atomic array")]
pub struct Cli {
    /// Flat key = value configuration file.
    #[arg(short, long, global = true)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
    #[command(subcommand)]
    pub command: Command,
}

/// One flag per configuration key; flags win over the file.
#[derive(Debug, Default, Args)]
pub struct Overrides {
    #[arg(long, global = true)]
    pub mu: Option<String>,
    #[arg(long, global = true)]
    pub rho: Option<String>,
    #[arg(long, global = true)]
    pub a_tilde: Option<String>,
    #[arg(long, global = true)]
    pub half_extent: Option<String>,
    /// zz, zx or custom.
    #[arg(long, global = true)]
    pub orientation: Option<String>,
    /// Test dipole `x,y,z` for custom orientations.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub test_dipole: Option<String>,
    /// Array dipole `x,y,z` for custom orientations.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub array_dipole: Option<String>,
    #[arg(long, global = true)]
    pub z_min: Option<String>,
    #[arg(long, global = true)]
    pub z_max: Option<String>,
    #[arg(long, global = true)]
    pub points_per_decade: Option<String>,
    #[arg(long, global = true)]
    pub site_budget: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<String>,
    #[arg(long, global = true)]
    pub threads: Option<String>,
}

impl Overrides {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        let fields = [
            ("mu", &self.mu),
            ("rho", &self.rho),
            ("a_tilde", &self.a_tilde),
            ("half_extent", &self.half_extent),
            ("orientation", &self.orientation),
            ("test_dipole", &self.test_dipole),
            ("array_dipole", &self.array_dipole),
            ("z_min", &self.z_min),
            ("z_max", &self.z_max),
            ("points_per_decade", &self.points_per_decade),
            ("site_budget", &self.site_budget),
            ("seed", &self.seed),
            ("threads", &self.threads),
        ];
        fields.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k, v))).collect()
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Direct,
    Envelope,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shifts over a grid of heights, as CSV.
    Sweep {
        /// Output file (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Fail instead of skipping direct sums above the site budget.
        #[arg(long)]
        require_direct: bool,
    },
    /// Bulk, edge and vertex parts of both shifts at one height.
    Decompose {
        #[arg(long)]
        z: f64,
        /// CSV instead of the text report.
        #[arg(long)]
        csv: bool,
    },
    /// Tabulated asymptotic laws at one height.
    Asymptotic {
        #[arg(long)]
        z: f64,
        /// Only this regime, e.g. resonant_zz_retarded_dense.
        #[arg(long)]
        regime: Option<String>,
    },
    /// Random check of the twelve-process denominator identity.
    VerifyDiagrams {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Defaults to the configured seed.
        #[arg(long = "sample-seed")]
        sample_seed: Option<u64>,
        /// Test hook: flip the sign of one process (I..XII).
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
    /// Power-law fit of one column of a sweep CSV.
    Fit {
        csv: PathBuf,
        #[arg(long)]
        column: String,
        /// `lo,hi` in z̃.
        #[arg(long, value_parser = parse_window)]
        window: (f64, f64),
        #[arg(long, value_enum, default_value = "direct")]
        mode: Mode,
    },
}

fn parse_window(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad bound {lo:?}"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad bound {hi:?}"))?;
    if !(lo < hi) {
        return Err("need lo < hi".into());
    }
    Ok((lo, hi))
}

fn process(label: &str) -> Result<ProcessId> {
    ProcessId::ALL
        .into_iter()
        .find(|p| p.label() == label)
        .ok_or_else(|| CliError::Usage(format!("unknown process {label:?}")))
}

/// Runs a parsed command line; `env_threads` is the value of [`THREADS_ENV`].
pub fn run(cli: &Cli, env_threads: Option<&str>, out: &mut dyn Write) -> Result<()> {
    let cfg = Config::load(cli.config.as_deref(), &cli.overrides.pairs(), env_threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    // the pool needs a Send sink, so output is buffered and copied after
    let mut buf = Vec::new();
    let status = pool.install(|| execute(cli, &cfg, &mut buf));
    out.write_all(&buf)?;
    status
}

fn execute(cli: &Cli, cfg: &Config, out: &mut Vec<u8>) -> Result<()> {
    let cfg = cfg.clone();
    match &cli.command {
        Command::Sweep { output, require_direct } => match output {
            Some(path) => {
                let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
                commands::cmd_sweep(&cfg, *require_direct, &mut file)?;
                file.flush()?;
                Ok(())
            }
            None => commands::cmd_sweep(&cfg, *require_direct, out),
        },
        Command::Decompose { z, csv } => commands::cmd_decompose(&cfg, *z, *csv, out),
        Command::Asymptotic { z, regime } => commands::cmd_asymptotic(&cfg, *z, regime.as_deref(), out),
        Command::VerifyDiagrams { samples, sample_seed, corrupt } => {
            let corrupt = corrupt.as_deref().map(process).transpose()?;
            commands::cmd_verify_diagrams(*samples, sample_seed.unwrap_or(cfg.seed), corrupt, out)
        }
        Command::Fit { csv, column, window, mode } => {
            let mode = match mode {
                Mode::Direct => FitMode::Direct,
                Mode::Envelope => FitMode::Envelope,
            };
            commands::cmd_fit(csv, column, *window, mode, out).map(|_| ())
        }
    }
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with<I, S>(args: I, env_threads: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match run(&cli, env_threads, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "cpshift: {e}");
            e.exit_code()
        }
    }
}

pub fn threads_from_env() -> Option<String> {
    std::env::var(THREADS_ENV).ok()
}
