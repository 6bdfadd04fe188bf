mod perturb;
mod spectrum;
mod sweep;
mod table;
mod verify;
mod wavefunction;

pub use perturb::cmd_perturb;
pub use spectrum::cmd_spectrum;
pub use sweep::cmd_sweep;
pub use table::cmd_table;
pub use verify::cmd_verify;
pub use wavefunction::cmd_wavefunction;

use ptho_core::{validate, FrequencyChoice, FrequencyMode, Truncation, TransformParams, C64};

use crate::args::ModelArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// Correction magnitude above which `perturb` reports a failure.
pub const CORRECTION_TOL: f64 = 1e-12;

pub(crate) fn resolve(model: &ModelArgs) -> CliResult<(TransformParams, FrequencyChoice)> {
    let params = validate(model.lambda, model.beta, model.scale)?;
    let mode: FrequencyMode = model.mode.into();
    if mode != FrequencyMode::Custom && model.omega.is_some() {
        return Err(CliError::Config(format!("--omega only applies to --mode custom, not {mode}")));
    }
    let freq = FrequencyChoice::select(&params, mode, model.omega)?;
    Ok((params, freq))
}

pub(crate) fn record_model(config: &mut RunConfig, model: &ModelArgs, freq: &FrequencyChoice) {
    config.lambda = Some(model.lambda);
    config.beta = Some(model.beta);
    config.scale = Some(model.scale);
    config.mode = Some(freq.mode.to_string());
    config.omega = Some(freq.omega);
    config.truncation = Some(truncation_name(model.truncation.into()).into());
}

pub(crate) fn truncation_name(t: Truncation) -> &'static str {
    match t {
        Truncation::Projected => "projected",
        Truncation::Listing => "listing",
    }
}

/// `|λ_n + (n+½)|`.
pub(crate) fn deviation(n: usize, value: C64) -> f64 {
    (value - C64::new(-(n as f64 + 0.5), 0.0)).norm()
}

pub(crate) fn thread_pool(jobs: Option<usize>) -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Config("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    builder.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))
}
