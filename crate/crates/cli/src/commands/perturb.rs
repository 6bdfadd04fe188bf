use ptho_core::perturbation::default_basis;
use ptho_core::{eigen_residual, overlap_identities, perturbation_report, FrequencyMode};

use super::{record_model, resolve, CORRECTION_TOL};
use crate::args::{parse_states, PerturbArgs};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{Check, Document, Table};

/// Explicitly summed corrections of orders 1–3 per state, plus the series
/// overlap identities and residual at `k_max` (ω₁/ω₂ only).
pub fn cmd_perturb(args: &PerturbArgs) -> CliResult<Document> {
    let (params, freq) = resolve(&args.model)?;
    let states = parse_states(&args.state)?;
    if states.is_empty() {
        return Err(CliError::Config("no states requested".into()));
    }
    let mut table = Table::new(&[
        "n", "n_basis", "eps0", "eps1", "eps2", "eps3", "max_abs_correction", "norm_overlap", "energy_overlap", "eigen_residual",
    ]);
    let mut worst = 0.0f64;
    let mut failing = Vec::new();
    for &n in &states {
        let n_basis = args.n_basis.unwrap_or_else(|| default_basis(n, args.k_max));
        let report = perturbation_report(&params, &freq, n, n_basis)?;
        let max = report.max_abs_correction();
        worst = worst.max(max);
        if max > CORRECTION_TOL {
            failing.push(n);
        }
        let (norm, energy, residual) = if freq.mode == FrequencyMode::Custom {
            (None, None, None)
        } else {
            let o = overlap_identities(&params, freq.mode, n, args.k_max, n_basis)?;
            let r = eigen_residual(&params, freq.mode, n, args.k_max, n_basis)?;
            (Some(o.norm_overlap), Some(o.energy_overlap), Some(r))
        };
        table.push(vec![
            n.into(),
            n_basis.into(),
            report.epsilon0.into(),
            report.corrections[0].into(),
            report.corrections[1].into(),
            report.corrections[2].into(),
            max.into(),
            norm.into(),
            energy.into(),
            residual.into(),
        ]);
    }
    let mut config = RunConfig::new("perturb", &args.output);
    record_model(&mut config, &args.model, &freq);
    config.states = Some(states);
    config.k_max = Some(args.k_max);
    config.n_basis = args.n_basis;
    let mut doc = Document::new(&config, table);
    let detail = if failing.is_empty() {
        format!("max |correction| {worst:e}")
    } else {
        format!("max |correction| {worst:e}; states {failing:?} exceed {CORRECTION_TOL:e}")
    };
    doc.checks.push(Check::new("vanishing corrections", failing.is_empty(), detail));
    Ok(doc)
}
