use ptho_core::tables::{table, TABLE_ROWS, TABLE_TOLERANCE};
use ptho_core::{build_hamiltonian_with, qr_eigenvalues, validate, FrequencyChoice, QrOptions};

use super::{deviation, truncation_name};
use crate::args::TableArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{Check, Document, Table};

/// Every column of the chosen table at `n_basis`, graded cell by cell
/// against `−(n+½)`.
pub fn cmd_table(args: &TableArgs) -> CliResult<Document> {
    let spec = table(args.which)?;
    let max_row = *TABLE_ROWS.iter().max().unwrap_or(&0);
    if args.n_basis <= max_row {
        return Err(CliError::Config(format!("table rows reach n={max_row}; need --n-basis > {max_row}")));
    }
    let mut config = RunConfig::new("table", &args.output);
    config.table = Some(args.which);
    config.mode = Some(spec.mode.to_string());
    config.n_basis = Some(args.n_basis);
    config.truncation = Some(truncation_name(args.truncation.into()).into());

    let mut out = Table::new(&["n", "lambda", "beta", "omega", "re", "im", "deviation", "status"]);
    let mut checks = Vec::new();
    for col in spec.columns {
        let params = validate(col.lambda, col.beta, 1.0)?;
        let freq = FrequencyChoice::select(&params, spec.mode, None)?;
        let h = build_hamiltonian_with(&params, &freq, args.n_basis, args.truncation.into())?;
        let report = qr_eigenvalues(&h, &QrOptions::default())?;
        let mut failed = 0;
        let mut worst = 0.0f64;
        for &n in &TABLE_ROWS {
            let value = report.eigenvalues[n];
            let dev = deviation(n, value);
            let pass = dev <= TABLE_TOLERANCE;
            failed += usize::from(!pass);
            worst = worst.max(dev);
            out.push(vec![
                n.into(),
                col.lambda.into(),
                col.beta.into(),
                freq.omega.into(),
                value.re.into(),
                value.im.into(),
                dev.into(),
                (if pass { "PASS" } else { "FAIL" }).into(),
            ]);
        }
        checks.push(Check::new(
            format!("column lambda={} beta={}", col.lambda, col.beta),
            failed == 0,
            format!("{} of {} cells within {TABLE_TOLERANCE:e}, max deviation {worst:e}", TABLE_ROWS.len() - failed, TABLE_ROWS.len()),
        ));
    }
    let mut doc = Document::new(&config, out);
    doc.checks = checks;
    Ok(doc)
}
