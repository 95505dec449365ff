use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zf_core::ComplexValue;

use crate::output::OutputFormat;

/// Parses `RE[,IM]` into a complex number; IM defaults to 0.
pub fn parse_complex(s: &str) -> Result<ComplexValue, String> {
    let mut parts = s.split(',');
    let re = parts.next().unwrap_or("");
    let im = parts.next();
    if parts.next().is_some() {
        return Err(format!("expected RE[,IM], got `{s}`"));
    }
    let parse = |t: &str| -> Result<f64, String> {
        let v: f64 = t
            .trim()
            .parse()
            .map_err(|_| format!("`{t}` is not a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("`{t}` is not finite"))
        }
    };
    Ok(ComplexValue::new(
        parse(re)?,
        im.map(parse).transpose()?.unwrap_or(0.0),
    ))
}

/// Accepts integers in plain or scientific form (`100000`, `1e5`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(format!("`{s}` is not a non-negative integer"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "zf",
    version,
    about = "Prime zeta, dipole and elliptic-curve experiments"
)]
pub struct RunConfig {
    /// Output format for the result table.
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Csv, global = true)]
    pub output_format: OutputFormat,
    /// Worker threads for the per-prime loops; 0 uses all cores.
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the Riemann zeta function.
    Zeta(ZetaArgs),
    /// Evaluate the prime zeta function P(z).
    PrimeZeta(PrimeZetaArgs),
    /// Check one of the prime zeta identities.
    Identity(IdentityArgs),
    /// Dipole sequences and dipole-regularized sums.
    Dipole(DipoleArgs),
    /// Curve discriminants and local point counts.
    Curve(CurveArgs),
    /// Partial BSD products and rank fits.
    Bsd(BsdArgs),
    /// Count rational points up to a naive height.
    Points(PointsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaMethod {
    Eta,
    Dirichlet,
    Counterterm,
    EulerProduct,
    Auto,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Argument as RE[,IM].
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: ComplexValue,
    #[arg(long, value_enum, default_value_t = ZetaMethod::Eta)]
    pub method: ZetaMethod,
    /// Terms for dirichlet/counterterm, sieve limit for euler-product.
    #[arg(long, value_parser = parse_count, default_value = "1000000")]
    pub limit: u64,
    /// Target absolute error for eta/auto.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrimeZetaMethod {
    Direct,
    Mobius,
    InclusionExclusion,
    Counterterm,
}

#[derive(Debug, Args)]
pub struct PrimeZetaArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: ComplexValue,
    #[arg(long, value_enum)]
    pub method: PrimeZetaMethod,
    /// Sieve limit for direct and counterterm.
    #[arg(long, value_parser = parse_count, default_value = "1000000")]
    pub limit: u64,
    /// Prime counts for a counterterm trace; overrides --limit.
    #[arg(long, value_delimiter = ',', value_parser = parse_count)]
    pub limits: Vec<u64>,
    #[arg(long, value_parser = parse_count, default_value = "40")]
    pub depth: u64,
    #[arg(long = "prime-bound", value_parser = parse_count, default_value = "100")]
    pub prime_bound: u64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityName {
    EulerGamma,
    ArtinHasse,
    LogSplit,
    ExpansionCoeff,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, value_enum)]
    pub name: IdentityName,
    /// Last k in the euler-gamma sum.
    #[arg(long, value_parser = parse_count, default_value = "30")]
    pub kmax: u64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "2")]
    pub z: ComplexValue,
    #[arg(long, value_parser = parse_count, default_value = "40")]
    pub depth: u64,
    /// Sieve limit for the artin-hasse prime sum.
    #[arg(long, value_parser = parse_count, default_value = "1000000")]
    pub limit: u64,
    /// Largest m for expansion-coeff.
    #[arg(long = "m-max", value_parser = parse_count, default_value = "1000")]
    pub m_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DipoleMode {
    Recurrence,
    ClosedForm,
    Regularized,
    Scan,
}

#[derive(Debug, Args)]
pub struct DipoleArgs {
    #[arg(long, value_enum)]
    pub mode: DipoleMode,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: ComplexValue,
    /// Number of primes n.
    #[arg(long, value_parser = parse_count, default_value = "1000")]
    pub limit: u64,
    /// Prime counts for a scan.
    #[arg(long, value_delimiter = ',', value_parser = parse_count)]
    pub limits: Vec<u64>,
    /// Seed α_1 as RE[,IM]; defaults to the closed-form seed.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha1: Option<ComplexValue>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Curve catalog; defaults to the bundled fixtures.
    #[arg(long = "curves")]
    pub curve_file: Option<PathBuf>,
    /// Restrict to one curve label.
    #[arg(long)]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveMode {
    Ap,
    Discriminant,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum, default_value_t = CurveMode::Ap)]
    pub mode: CurveMode,
    #[command(flatten)]
    pub catalog: CatalogArgs,
    /// Local data for primes below this bound.
    #[arg(long, value_parser = parse_count, default_value = "100")]
    pub limit: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BsdMode {
    Product,
    Fit,
}

#[derive(Debug, Args)]
pub struct BsdArgs {
    #[command(flatten)]
    pub catalog: CatalogArgs,
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    #[arg(long, value_enum, default_value_t = BsdMode::Product)]
    pub mode: BsdMode,
    /// Shorthand for --mode fit.
    #[arg(long)]
    pub fit: bool,
    /// Count affine points only.
    #[arg(long)]
    pub affine: bool,
    /// Fit checkpoints per decade of x.
    #[arg(long = "per-decade", default_value_t = zf_core::elliptic::DEFAULT_CHECKPOINTS_PER_DECADE)]
    pub per_decade: u32,
    /// Emit the checkpoint trace of the single selected curve instead.
    #[arg(long)]
    pub trace: bool,
}

impl BsdArgs {
    pub fn fitting(&self) -> bool {
        self.fit || self.mode == BsdMode::Fit
    }
}

#[derive(Debug, Args)]
pub struct PointsArgs {
    #[command(flatten)]
    pub catalog: CatalogArgs,
    /// Naive height bound.
    #[arg(long = "A", value_parser = parse_count)]
    pub a: u64,
}
