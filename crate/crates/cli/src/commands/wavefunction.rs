use std::fs;

use ptho_core::perturbation::default_basis;
use ptho_core::wavefunction::{turning_point, RealGrid};
use ptho_core::{decay_report, eigen_residual, evaluate_basis, evaluate_series, series_coefficients, SeriesWarning};

use super::{record_model, resolve};
use crate::args::WavefunctionArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{Check, Document, Table};
use crate::plot::{svg, Curve};

/// `ψ_n` and the series `Φ_n` at `k_max` on one grid, with decay reports.
/// The optional SVG shows both curves.
pub fn cmd_wavefunction(args: &WavefunctionArgs) -> CliResult<Document> {
    let (params, freq) = resolve(&args.model)?;
    let series = series_coefficients(&params, freq.mode, args.state, args.k_max)?;
    let omega = series.omega;
    let grid = match args.half_width {
        Some(l) => RealGrid::uniform(-l, l, args.grid_points)?,
        None => {
            let l = RealGrid::default_for(series.top_index(), omega).reach();
            RealGrid::uniform(-l, l, args.grid_points)?
        }
    };
    let basis = evaluate_basis(args.state, omega, &grid);
    let phi = evaluate_series(&series, &grid);
    let basis_decay = decay_report(&basis, args.threshold)?;
    let series_decay = decay_report(&phi, args.threshold)?;
    let residual = eigen_residual(&params, freq.mode, args.state, args.k_max, default_basis(args.state, args.k_max))?;

    let mut table = Table::new(&["x", "basis", "series"]);
    for ((&x, &b), &s) in grid.points.iter().zip(&basis.values).zip(&phi.values) {
        table.push(vec![x.into(), b.into(), s.into()]);
    }
    let mut config = RunConfig::new("wavefunction", &args.output);
    record_model(&mut config, &args.model, &freq);
    config.states = Some(vec![args.state]);
    config.k_max = Some(args.k_max);
    config.grid_half_width = Some(grid.reach());
    config.grid_points = Some(grid.len());
    config.threshold = Some(args.threshold);
    let mut doc = Document::new(&config, table);
    doc.meta("omega_effective", omega);
    doc.meta("series_terms", series.coeffs.len());
    doc.meta("n_top", series.top_index());
    doc.meta("turning_point", turning_point(series.top_index(), omega));
    doc.meta("eigen_residual", residual);
    doc.meta("terminated", series.terminated);
    if !series.warnings.is_empty() {
        let w: Vec<String> = series
            .warnings
            .iter()
            .map(|w| match w {
                SeriesWarning::NonContracting { f } => format!("non-contracting f={f}"),
                SeriesWarning::Divergent { k } => format!("divergent from k={k}"),
            })
            .collect();
        doc.meta("warnings", w.join("; "));
    }
    doc.checks.push(Check::new("decay basis", basis_decay.pass, format!("max tail {:e}", basis_decay.max_tail)));
    doc.checks.push(Check::new("decay series", series_decay.pass, format!("max tail {:e}", series_decay.max_tail)));

    if let Some(path) = &args.plot {
        let title = format!("n={} {} lambda={} beta={} k_max={}", args.state, freq.mode, params.lambda, params.beta, series.k_max);
        let image = svg(&title, &grid.points, &[Curve { label: "basis", y: &basis.values }, Curve { label: "series", y: &phi.values }]);
        fs::write(path, image).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    Ok(doc)
}
