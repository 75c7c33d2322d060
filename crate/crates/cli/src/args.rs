use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hallint_core::quadrature::DEFAULT_TOL;

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "hallint",
    version,
    about = "Elliptic double integrals of Hall-effect device theory",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity and print `value (±error estimate)`.
    Eval(EvalArgs),
    /// Run identity checks over a parameter grid.
    Verify(VerifyArgs),
    /// Geometry factor and SNR of a device, with its complement.
    Device(DeviceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expr {
    /// K(√λ), needs --lambda
    #[value(name = "K")]
    K,
    /// K(√(1-λ)), needs --lambda
    #[value(name = "Kprime")]
    Kprime,
    /// E(√λ), needs --lambda
    #[value(name = "E")]
    E,
    /// F(φ | λ), needs --phi and --lambda
    #[value(name = "F")]
    F,
    /// exp(-π K'/K), needs --lambda
    #[value(name = "nome")]
    Nome,
    /// A(p, q), needs --p and --q
    #[value(name = "A")]
    A,
    /// I(α, β), needs --alpha and --beta
    #[value(name = "I")]
    I,
    /// 3-contact geometry factor, needs --alpha and --beta
    #[value(name = "G3C")]
    G3c,
    /// 4-contact geometry factor, needs --p and --f
    #[value(name = "G4C")]
    G4c,
    /// 3-contact SNR, needs --alpha and --beta
    #[value(name = "SNR3C")]
    Snr3c,
    /// 4-contact SNR, needs --p and --f
    #[value(name = "SNR4C")]
    Snr4c,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum, ignore_case = true)]
    pub expr: Expr,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub f: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// SNR proportionality constant.
    #[arg(long, default_value_t = 1.0)]
    pub snr_constant: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity to check; repeat or separate with commas. Default: all.
    #[arg(long = "identity", value_delimiter = ',')]
    pub identities: Vec<String>,
    /// Grid values in (0, 1). Default: 0.1,0.2,...,0.9.
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<f64>>,
    /// Tolerance for every identity, replacing the per-identity defaults.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeviceFormat {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct DeviceArgs {
    /// Equivalent-circuit edge resistance R_e (ohms).
    #[arg(long)]
    pub re: Option<f64>,
    /// Equivalent-circuit diagonal resistance R_d (ohms).
    #[arg(long)]
    pub rd: Option<f64>,
    /// Sheet resistance R_sh (ohms).
    #[arg(long)]
    pub rsh: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// 4-contact modulus p.
    #[arg(long)]
    pub p: Option<f64>,
    /// 4-contact modulus f.
    #[arg(long)]
    pub f: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 1.0)]
    pub snr_constant: f64,
    #[arg(long, value_enum, default_value_t = DeviceFormat::Table)]
    pub format: DeviceFormat,
}
