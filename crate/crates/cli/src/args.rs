use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptho_core::{FrequencyMode, Truncation};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "ptho", version, about = "Spectra, series and wavefunctions of the transformed PT-symmetric oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce one of the two reference tables and grade every cell.
    Table(TableArgs),
    /// Sorted eigenvalues of the truncated Hamiltonian with residuals.
    Spectrum(SpectrumArgs),
    /// Rayleigh–Schrödinger corrections and series overlap identities.
    Perturb(PerturbArgs),
    /// Basis function and series wavefunction on a real grid.
    Wavefunction(WavefunctionArgs),
    /// Concurrent sweep over (lambda, beta, n-basis).
    Sweep(SweepArgs),
    /// Built-in self-check suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Omega1,
    Omega2,
    Custom,
}

impl From<ModeArg> for FrequencyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Omega1 => FrequencyMode::Omega1,
            ModeArg::Omega2 => FrequencyMode::Omega2,
            ModeArg::Custom => FrequencyMode::Custom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TruncationArg {
    Projected,
    Listing,
}

impl From<TruncationArg> for Truncation {
    fn from(t: TruncationArg) -> Self {
        match t {
            TruncationArg::Projected => Truncation::Projected,
            TruncationArg::Listing => Truncation::Listing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Shifted QR on the full matrix.
    Qr,
    /// Diagonal read-off when the matrix is triangular, QR otherwise.
    Auto,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 3.0)]
    pub beta: f64,
    /// Basis scale s; enters as the effective frequency ω/s².
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Omega1)]
    pub mode: ModeArg,
    /// Basis frequency, required for `--mode custom`.
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, value_enum, default_value_t = TruncationArg::Projected)]
    pub truncation: TruncationArg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave the timestamp out of the metadata so reruns are byte-identical.
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Which table, 1 (omega1 columns) or 2 (omega2 columns).
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    #[arg(long, default_value_t = ptho_core::tables::TABLE_BASIS)]
    pub n_basis: usize,
    #[arg(long, value_enum, default_value_t = TruncationArg::Projected)]
    pub truncation: TruncationArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 100)]
    pub n_basis: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Qr)]
    pub method: MethodArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PerturbArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// States: `4`, `0..5` (inclusive) or `0,2,7`.
    #[arg(long, default_value = "0..5")]
    pub state: String,
    /// Series order used for the overlap identities.
    #[arg(long, default_value_t = ptho_core::perturbation::DEFAULT_K_MAX)]
    pub k_max: usize,
    /// Truncated basis size; `n + 2·k_max + 4` per state when omitted.
    #[arg(long)]
    pub n_basis: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub state: usize,
    #[arg(long, default_value_t = ptho_core::perturbation::DEFAULT_K_MAX)]
    pub k_max: usize,
    /// Grid half-width; sized from the turning point when omitted.
    #[arg(long)]
    pub half_width: Option<f64>,
    #[arg(long, default_value_t = ptho_core::wavefunction::DEFAULT_GRID_POINTS)]
    pub grid_points: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub threshold: f64,
    /// Also write an SVG plot of both curves.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Values as `1,2,3` or `start:stop:step` (inclusive); may be empty.
    #[arg(long, default_value = "1,2")]
    pub lambdas: String,
    #[arg(long, default_value = "3,7")]
    pub betas: String,
    #[arg(long, default_value = "50,100")]
    pub n_basis: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Omega1)]
    pub mode: ModeArg,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    #[arg(long, value_enum, default_value_t = TruncationArg::Projected)]
    pub truncation: TruncationArg,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// `4`, `0..5` (inclusive) or a comma list.
pub fn parse_states(spec: &str) -> CliResult<Vec<usize>> {
    let spec = spec.trim();
    let bad = |_| CliError::Config(format!("cannot parse state list '{spec}'"));
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
        return Ok((a..=b).collect());
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(bad))
        .collect()
}

/// `1,2,3` or `start:stop:step` (inclusive, tolerant to rounding). Empty
/// input or `start > stop` gives an empty list.
pub fn parse_values(spec: &str) -> CliResult<Vec<f64>> {
    let spec = spec.trim();
    let bad = || CliError::Config(format!("cannot parse value list '{spec}'"));
    if spec.contains(':') {
        let parts: Vec<f64> = spec
            .split(':')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<CliResult<_>>()?;
        let [start, stop, step] = parts[..] else { return Err(bad()) };
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor();
        if count < 0.0 {
            return Ok(Vec::new());
        }
        return Ok((0..=count as usize).map(|i| start + step * i as f64).collect());
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect()
}

pub fn parse_sizes(spec: &str) -> CliResult<Vec<usize>> {
    parse_values(spec)?
        .into_iter()
        .map(|v| {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(CliError::Config(format!("basis size {v} is not a positive integer")))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_lists() {
        assert_eq!(parse_states("4").unwrap(), vec![4]);
        assert_eq!(parse_states("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_states("1, 5").unwrap(), vec![1, 5]);
        assert!(parse_states("x").is_err());
    }

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("1,2").unwrap(), vec![1.0, 2.0]);
        assert_eq!(parse_values("").unwrap(), Vec::<f64>::new());
        assert_eq!(parse_values("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_values("3:1:1").unwrap(), Vec::<f64>::new());
        assert!(parse_values("0:1:0").is_err());
        assert_eq!(parse_sizes("50,100").unwrap(), vec![50, 100]);
        assert!(parse_sizes("2.5").is_err());
    }
}
