use ptho_core::eigen::{trusted_limit, TRIANGULAR_BAND_TOL_REL};
use ptho_core::{build_hamiltonian_with, certify, qr_eigenvalues, triangular_fast_path, QrOptions, SpectralReport};

use super::{record_model, resolve};
use crate::args::{MethodArg, SpectrumArgs};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{spectrum_results, Document, Table};

/// Sorted spectrum with inverse-iteration residuals for the leading
/// `⌈N/2⌉` values. All `N` values are listed; the tail is marked untrusted.
pub fn cmd_spectrum(args: &SpectrumArgs) -> CliResult<Document> {
    let (params, freq) = resolve(&args.model)?;
    let h = build_hamiltonian_with(&params, &freq, args.n_basis, args.model.truncation.into())?;
    let mut report = match args.method {
        MethodArg::Auto => triangular_fast_path(&h, TRIANGULAR_BAND_TOL_REL * h.frobenius_norm()),
        MethodArg::Qr => None,
    }
    .map_or_else(|| qr_eigenvalues(&h, &QrOptions::default()), Ok)?;
    certify(&h, &mut report, trusted_limit(args.n_basis))?;

    let mut config = RunConfig::new("spectrum", &args.output);
    record_model(&mut config, &args.model, &freq);
    config.n_basis = Some(args.n_basis);
    let table = rows(&report);
    let mut doc = Document::new(&config, table);
    doc.meta("method", report.method.as_str());
    doc.meta("trusted_count", report.trusted_count);
    doc.meta("iterations", report.iterations);
    doc.results = Some(spectrum_results(&report, &doc.table)?);
    Ok(doc)
}

fn rows(report: &SpectralReport) -> Table {
    let mut t = Table::new(&["n", "re", "im", "residual", "trusted"]);
    let residuals = report.residuals.as_deref().unwrap_or(&[]);
    for (n, v) in report.eigenvalues.iter().enumerate() {
        t.push(vec![n.into(), v.re.into(), v.im.into(), residuals.get(n).copied().into(), report.is_trusted(n).into()]);
    }
    t
}
