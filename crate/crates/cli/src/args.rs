use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pnc_tas::Scheme;

#[derive(Debug, Parser)]
#[command(name = "pnc-tas", version, about = "Antenna selection for physical-layer network coding: simulation and bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo SER sweep at the relay, CSV output.
    Simulate(SimulateArgs),
    /// Closed-form SER bounds, CSV output.
    Bound(BoundArgs),
    /// Antenna selection for a single channel realization.
    Select(SelectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Modulation {
    Bpsk,
    Qpsk,
    #[value(name = "8psk")]
    Psk8,
}

impl Modulation {
    pub fn order(self) -> usize {
        match self {
            Modulation::Bpsk => 2,
            Modulation::Qpsk => 4,
            Modulation::Psk8 => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Modulation::Bpsk => "bpsk",
            Modulation::Qpsk => "qpsk",
            Modulation::Psk8 => "8psk",
        }
    }

    pub fn from_order(order: usize) -> Option<Self> {
        match order {
            2 => Some(Modulation::Bpsk),
            4 => Some(Modulation::Qpsk),
            8 => Some(Modulation::Psk8),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Tas1,
    Tas2,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Tas1 => Scheme::Tas1,
            SchemeArg::Tas2 => Scheme::Tas2,
        }
    }
}

/// Inclusive `start:step:stop` grid in dB, or a single value.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrGrid(pub Vec<f64>);

impl FromStr for SnrGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("bad number '{p}' in SNR grid '{s}'"));
        match parts.as_slice() {
            [single] => Ok(SnrGrid(vec![num(single)?])),
            [start, step, stop] => {
                let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
                if !step.is_finite() || step <= 0.0 || stop < start {
                    return Err(format!("SNR grid '{s}' needs step > 0 and stop >= start"));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                Ok(SnrGrid((0..count).map(|i| start + i as f64 * step).collect()))
            }
            _ => Err(format!("SNR grid '{s}' must be start:step:stop or a single value")),
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long = "mod", value_enum, default_value = "qpsk")]
    pub modulation: Modulation,
    #[arg(long, default_value_t = 2)]
    pub na: usize,
    #[arg(long, default_value_t = 2)]
    pub nb: usize,
    #[arg(long, value_enum, default_value = "tas1")]
    pub scheme: SchemeArg,
    /// SNR grid in dB, start:step:stop inclusive.
    #[arg(long = "snr-db", default_value = "0:5:40", allow_hyphen_values = true)]
    pub snr_db: SnrGrid,
    /// Frames per SNR point (upper limit when early stopping).
    #[arg(long, default_value_t = 10_000)]
    pub frames: u64,
    /// Symbols per frame.
    #[arg(long, default_value_t = 100)]
    pub spf: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Early-stop target per point; 0 disables early stopping.
    #[arg(long = "max-errors", default_value_t = 2000)]
    pub max_errors: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a JSON run manifest.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Include analytic bound values in the manifest.
    #[arg(long = "with-bound")]
    pub with_bound: bool,
    /// Re-run the configuration stored in a manifest; other run flags are ignored.
    #[arg(long = "from-manifest")]
    pub from_manifest: Option<PathBuf>,
}

/// How `lambda*` is obtained for the TAS2 bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaMode {
    Exhaustive,
    Sampled(u64),
    /// `r_min` from the closed-form argument; `lambda*` still sampled.
    AnalyticRmin,
}

/// Sample count used when `lambda*` must be sampled without an explicit count.
pub const DEFAULT_LAMBDA_SAMPLES: u64 = 1_000_000;

impl FromStr for LambdaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(LambdaMode::Exhaustive),
            "analytic-rmin" => Ok(LambdaMode::AnalyticRmin),
            _ => match s.strip_prefix("sampled:") {
                Some(n) => n
                    .parse::<u64>()
                    .ok()
                    .filter(|&n| n > 0)
                    .map(LambdaMode::Sampled)
                    .ok_or_else(|| format!("bad sample count in '{s}'")),
                None => Err(format!("lambda mode must be exhaustive, sampled:N or analytic-rmin, got '{s}'")),
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long = "mod", value_enum, default_value = "qpsk")]
    pub modulation: Modulation,
    #[arg(long, default_value_t = 2)]
    pub na: usize,
    #[arg(long, default_value_t = 2)]
    pub nb: usize,
    #[arg(long, value_enum, default_value = "tas1")]
    pub bound: SchemeArg,
    #[arg(long = "snr-db", default_value = "0:5:40", allow_hyphen_values = true)]
    pub snr_db: SnrGrid,
    #[arg(long = "lambda-mode", default_value = "exhaustive")]
    pub lambda_mode: LambdaMode,
    /// Seed for sampled lambda* estimation.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelectScheme {
    Tas1,
    Tas2,
    Both,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[arg(long = "mod", value_enum, default_value = "qpsk")]
    pub modulation: Modulation,
    /// Channel file: one "re im" per line, N_A lines for user A then N_B for user B.
    #[arg(long, conflicts_with_all = ["h_a", "h_b"])]
    pub channels: Option<PathBuf>,
    /// Antennas of user A in the channel file.
    #[arg(long)]
    pub na: Option<usize>,
    /// Antennas of user B in the channel file.
    #[arg(long)]
    pub nb: Option<usize>,
    /// Inline coefficient for user A as RE,IM; repeat per antenna.
    #[arg(long = "h-a", allow_hyphen_values = true)]
    pub h_a: Vec<String>,
    /// Inline coefficient for user B as RE,IM; repeat per antenna.
    #[arg(long = "h-b", allow_hyphen_values = true)]
    pub h_b: Vec<String>,
    #[arg(long, value_enum, default_value = "both")]
    pub scheme: SelectScheme,
}
