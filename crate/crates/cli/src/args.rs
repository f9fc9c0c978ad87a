use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Parser)]
#[command(name = "zic-dgr", version, about = "Diversity gain region of the Rayleigh-fading Z-interference channel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Parsed flags of one run. Serialized as the `config` of every artifact.
#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Closed-form diversity pair of one scheme.
    Diversity(DiversityArgs),
    /// Optimal RX1/RX2 tradeoff curve.
    Curve(CurveArgs),
    /// Which multiplexing-gain case an operating point falls in.
    Classify(ClassifyArgs),
    /// Closed forms against the infimum oracle on random configurations.
    VerifyOracle(VerifyOracleArgs),
    /// Two-slot time sharing against the fixed-split envelope.
    VerifyTimeshare(VerifyArgs),
    /// Mixed CMO+HK time sharing against the fixed-split envelope.
    VerifyMixed(VerifyArgs),
    /// Finite-SNR outage probabilities and fitted slopes.
    Ladder(LadderArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Diversity(_) => "diversity",
            Command::Curve(_) => "curve",
            Command::Classify(_) => "classify",
            Command::VerifyOracle(_) => "verify-oracle",
            Command::VerifyTimeshare(_) => "verify-timeshare",
            Command::VerifyMixed(_) => "verify-mixed",
            Command::Ladder(_) => "ladder",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Diversity(a) => &a.output,
            Command::Curve(a) => &a.output,
            Command::Classify(a) => &a.output,
            Command::VerifyOracle(a) => &a.output,
            Command::VerifyTimeshare(a) | Command::VerifyMixed(a) => &a.output,
            Command::Ladder(a) => &a.output,
        }
    }

    /// Format used when `--format` is absent.
    pub fn default_format(&self) -> Format {
        match self {
            Command::Curve(_) | Command::Ladder(_) => Format::Csv,
            _ => Format::Json,
        }
    }

    pub fn supports_csv(&self) -> bool {
        matches!(self, Command::Curve(_) | Command::Ladder(_))
    }
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct OpArgs {
    /// RX1 multiplexing gain.
    #[arg(long)]
    pub r1: f64,
    /// RX2 multiplexing gain.
    #[arg(long)]
    pub r2: f64,
    /// Interference-path SNR exponent.
    #[arg(long)]
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Hk,
    Cmo,
    Tian,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct SchemeArgs {
    #[arg(long, value_enum, default_value_t = SchemeKind::Hk)]
    pub scheme: SchemeKind,
    /// Common multiplexing gain of TX2 (hk only).
    #[arg(long)]
    pub t2: Option<f64>,
    /// Power-split exponent of TX2 (hk only).
    #[arg(long)]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output file; defaults to `<command>.<format>` under $ZIC_DGR_OUT_DIR,
    /// or stdout when that is unset.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DiversityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OpArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveMethod {
    /// CMO point plus the closed-form curve.
    Envelope,
    /// Pareto staircase of the grid sweep.
    Sweep,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CurveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OpArgs,
    #[arg(long, default_value_t = 1e-3)]
    pub resolution: f64,
    #[arg(long, value_enum, default_value_t = CurveMethod::Envelope)]
    pub method: CurveMethod,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OpArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyOracleArgs {
    /// Number of random configurations.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OpArgs,
    /// Number of random draws.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LadderMethod {
    Quadrature,
    Montecarlo,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LadderArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OpArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub scheme: SchemeArgs,
    /// SNR ladder in dB as `start:step:stop`.
    #[arg(long = "snr-db", default_value = "30:5:60")]
    pub snr_db: String,
    #[arg(long, value_enum, default_value_t = LadderMethod::Quadrature)]
    pub method: LadderMethod,
    /// Monte Carlo trials per SNR.
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Absolute error target of the quadrature.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}
