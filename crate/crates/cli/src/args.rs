use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir interaction between concentric cylinders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one energy.
    Compute(ComputeArgs),
    /// Sweep the gap ratio or the temperature.
    Scan(ScanArgs),
    /// Run a self-check suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    /// hbar = c = k_B = 1; lengths in any unit, T and energies per length in matching powers.
    Natural,
    /// Radii in micrometres, temperature in kelvin, energy per length in J/m.
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    /// Zero-temperature energy for T = 0, Matsubara free energy otherwise.
    Auto,
    ZeroT,
    /// Zero-temperature energy from the (xi, k) double integral.
    Double,
    Matsubara,
    Classical,
    /// Thermal correction from the Poisson-resummed series.
    Poisson,
    /// Low-temperature leading term of the thermal correction.
    Leading,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Boundary conditions: DD, NN, DN, ND, PCPC or PCIP.
    #[arg(long)]
    pub bc: String,
    /// Inner radius.
    #[arg(long)]
    pub a1: f64,
    #[arg(long, value_enum, default_value_t = RegimeArg::Auto)]
    pub regime: RegimeArg,
    /// Relative accuracy target.
    #[arg(long = "rel-tol", default_value_t = 1e-8)]
    pub rel_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Units::Natural)]
    pub units: Units,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("outer").required(true).args(["eps", "a2"])))]
pub struct ComputeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Gap ratio (a2 - a1) / a1.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Outer radius.
    #[arg(long)]
    pub a2: Option<f64>,
    /// Temperature.
    #[arg(long = "T", visible_alias = "temperature", default_value_t = 0.0)]
    pub t: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Gap ratios, comma separated; a list of several values makes this the sweep axis.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub eps: Vec<f64>,
    /// Temperatures, comma separated; a list of several values makes this the sweep axis.
    #[arg(long = "T", visible_alias = "temperature", value_delimiter = ',', num_args = 0..)]
    pub t: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Wronskian,
    Debye,
    Identity,
    Mellin,
    Expansion,
    Thermal,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}
