use std::path::PathBuf;

use abcyl_core::HalfOdd;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "abcyl", version, about = "Dirac fermions on Aharonov-Bohm cylinders")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Parameter file with `key = value` lines
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write data here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Gauss-Legendre order (z panels in verify, momentum panels in packet)
    #[arg(long, global = true)]
    pub quad_order: Option<usize>,

    /// Seed for randomized sample points
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Add currents in amperes (needs radius_nm)
    #[arg(long, global = true)]
    pub physical: bool,

    #[command(flatten)]
    pub params: ParamFlags,
}

/// Flag overrides for the parameter file.
#[derive(Debug, Args, Default)]
pub struct ParamFlags {
    /// μ = MR
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// ν = πR/L (0 for an infinite cylinder)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    /// β = eBR²/2
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// α = R sqrt(E_F(E_F + 2M))
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long = "mass-ev", global = true, allow_hyphen_values = true)]
    pub mass_ev: Option<f64>,
    #[arg(long = "radius-nm", global = true, allow_hyphen_values = true)]
    pub radius_nm: Option<f64>,
    #[arg(long = "length-nm", global = true, allow_hyphen_values = true)]
    pub length_nm: Option<f64>,
    #[arg(long = "b-field-t", global = true, allow_hyphen_values = true)]
    pub b_field_t: Option<f64>,
    #[arg(long = "fermi-ev", global = true, allow_hyphen_values = true)]
    pub fermi_ev: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies and circular currents of individual modes
    Spectrum(SpectrumArgs),
    /// Persistent current by every applicable method
    Persistent(PersistentArgs),
    /// Wave-packet currents on the infinite cylinder
    Packet(PacketArgs),
    /// One observable over a parameter range
    Sweep(SweepArgs),
    /// Run the invariant suites
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Geometry {
    Finite,
    Infinite,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = Geometry::Finite)]
    pub geometry: Geometry,
    /// Largest longitudinal level
    #[arg(long, default_value_t = 1)]
    pub nmax: u32,
    /// λ runs over -lmax..=lmax
    #[arg(long, default_value = "1/2")]
    pub lmax: HalfOdd,
    /// Single λ instead of the range
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<HalfOdd>,
    /// kR for the infinite geometry
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k: f64,
}

#[derive(Debug, Args)]
pub struct PersistentArgs {}

#[derive(Debug, Args)]
pub struct PacketArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub lambda: HalfOdd,
    /// Weight of the σ = +1/2 family, `re` or `re,im`
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub mix_plus: String,
    /// Weight of the σ = -1/2 family, `re` or `re,im`
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub mix_minus: String,
    /// Rescale the amplitudes to unit norm
    #[arg(long)]
    pub normalize: bool,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pub zmin: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub zmax: f64,
    #[arg(long, default_value_t = 11)]
    pub zsteps: usize,
    /// Gauss-Legendre panels across the momentum window
    #[arg(long, default_value_t = 16)]
    pub k_panels: usize,
    /// Half-width of the momentum window in units of the packet width
    #[arg(long, default_value_t = 8.0)]
    pub window: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Beta,
    Mu,
    Nu,
    Alpha,
    Lambda,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Observable {
    Chi,
    Energy,
    Current,
    J,
    C,
    Electrons,
    PersistentExact,
    PersistentLinearized,
    PersistentCompact,
    PersistentShort,
    PersistentNonrel,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long, allow_hyphen_values = true)]
    pub start: String,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: String,
    /// Number of points (continuous parameters only)
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,
    #[arg(long, value_enum, default_value_t = Observable::Chi)]
    pub observable: Observable,
    /// Level for mode observables
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// λ for mode observables
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub lambda: HalfOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    #[value(name = "energy-off-by-1e-3")]
    EnergyOffBy1e3,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, hide = true)]
    pub fault: Option<Fault>,
}
