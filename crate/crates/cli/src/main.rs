//! `vibronic` — command-line front end of the vibronic color-center toolkit.
//!
//! Every command is deterministic: identical inputs give byte-identical
//! output files. Exit codes: 0 success, 2 usage error, 3 invalid physical
//! input, 4 numerical failure, 1 I/O failure.

mod commands;
mod config;
mod output;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vibronic::params::Species;

use crate::output::Format;

#[derive(Parser)]
#[command(name = "vibronic", version, about = "Vibronic model of group-IV vacancy color centers in diamond")]
struct Cli {
    /// Worker threads for internal sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

/// Output options shared by all commands.
#[derive(Args, Clone)]
struct OutputArgs {
    /// Directory for the output files; printed to stdout when omitted.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// JSON run configuration (unit-suffixed keys); flags take precedence.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Level tables and PL/PLE line lists of one species.
    Spectrum(SpectrumArgs),
    /// Stress → strain → spectrum conversion.
    Scubed(ScubedArgs),
    /// Regenerate the reference comparison tables with a pass/fail summary.
    Tables(TablesArgs),
    /// Quench factors and their prediction errors for the bundled parameter sets.
    QuenchReport(QuenchArgs),
    /// Intrinsic strain from a measured splitting of the upper ground doublet.
    Probe(ProbeArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    /// SiV, GeV, SnV or PbV.
    #[arg(long)]
    species: Option<Species>,
    /// Oscillator cut-off of the basis.
    #[arg(long)]
    n_cut: Option<usize>,
    /// Temperature (K).
    #[arg(long = "temp", value_name = "KELVIN")]
    temperature_k: Option<f64>,
    /// Magnetic field along the symmetry axis (T).
    #[arg(long = "b-z", value_name = "TESLA", allow_hyphen_values = true)]
    b_z_tesla: Option<f64>,
    /// Also write the energy convergence of both manifolds versus cut-off.
    #[arg(long)]
    check_convergence: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ScubedArgs {
    #[arg(long)]
    species: Option<Species>,
    /// Uniaxial stress (GPa, positive is tensile).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "voltage_v")]
    stress_gpa: Option<f64>,
    /// Stress direction in crystal coordinates, e.g. 0,0,1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    direction: Option<Vec<f64>>,
    /// Cantilever voltage (V) instead of a stress.
    #[arg(long)]
    voltage_v: Option<f64>,
    /// Unstrained ZPL wavelength (nm).
    #[arg(long)]
    zpl_nm: Option<f64>,
    /// Zero-stress ground splitting (GHz).
    #[arg(long)]
    delta_ground_ghz: Option<f64>,
    /// Zero-stress excited splitting (GHz).
    #[arg(long)]
    delta_excited_ghz: Option<f64>,
    /// Color-center orientation: axis111, axis1_m1_m1, axis_m11_m1, axis_m1_m11.
    #[arg(long)]
    orientation: Option<String>,
    /// Hooke's-law convention: compliance or as_printed.
    #[arg(long)]
    hooke: Option<String>,
    /// Points of the load ramp.
    #[arg(long)]
    n_points: Option<usize>,
    /// Cut-off used for the quench factors.
    #[arg(long)]
    n_cut: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TablesArgs {
    /// Output directory (created if missing).
    #[arg(long, value_name = "DIR", default_value = "tables")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct QuenchArgs {
    /// Restrict to one species (both manifolds).
    #[arg(long)]
    species: Option<Species>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ProbeArgs {
    /// Species supplying the ground-manifold q′ and strain susceptibility.
    #[arg(long)]
    species: Species,
    /// Zero-field ground splitting Δ₀ (GHz).
    #[arg(long)]
    delta0_ghz: f64,
    /// Transverse magnetic field B_y (T).
    #[arg(long, allow_hyphen_values = true)]
    b_y_tesla: f64,
    /// Measured splitting of the upper ground doublet (MHz).
    #[arg(long)]
    delta_sm_mhz: f64,
    /// Bohr magneton (GHz/T).
    #[arg(long, default_value_t = vibronic::units::BOHR_MAGNETON_GHZ_PER_T)]
    mu_b_ghz_per_t: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<vibronic::Error> for CliError {
    fn from(e: vibronic::Error) -> Self {
        match e {
            vibronic::Error::Validation(v) => CliError::Validation(v.to_string()),
            vibronic::Error::Numerical(n) => CliError::Numerical(n.to_string()),
        }
    }
}

impl From<vibronic::ValidationError> for CliError {
    fn from(e: vibronic::ValidationError) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be ≥ 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Scubed(a) => commands::scubed(a),
        Command::Tables(a) => tables::run(&a.out, a.format),
        Command::QuenchReport(a) => commands::quench_report(a),
        Command::Probe(a) => commands::probe(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vibronic: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
