use ptho_core::eigen::TRIANGULAR_BAND_TOL_REL;
use ptho_core::perturbation::default_basis;
use ptho_core::tables::{all_columns, table, TABLE_BASIS, TABLE_ROWS, TABLE_TOLERANCE};
use ptho_core::{
    build_hamiltonian, build_momentum, build_position, build_transformed_ops, commutator, correction,
    eigen_residual, overlap_identities, qr_eigenvalues, triangular_fast_path, validate, FockBasisSpec,
    FrequencyChoice, FrequencyMode, QrOptions, TransformParams, C64,
};
use rayon::prelude::*;

use super::{deviation, thread_pool};
use crate::args::VerifyArgs;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{Check, Document, Table};

type CheckFn = fn() -> ptho_core::Result<Check>;

/// Runs the self-check suite concurrently; one row and one check per item.
pub fn cmd_verify(args: &VerifyArgs) -> CliResult<Document> {
    let suite: [(&str, CheckFn); 8] = [
        ("table 1", || table_check(1)),
        ("table 2", || table_check(2)),
        ("commutator invariance", commutator_check),
        ("vanishing corrections", corrections_check),
        ("overlap identities", overlap_check),
        ("terminating series", terminating_check),
        ("series contraction", contraction_check),
        ("fast path agreement", fast_path_check),
    ];
    let pool = thread_pool(args.jobs)?;
    let checks: Vec<Check> = pool.install(|| {
        suite
            .par_iter()
            .map(|(name, f)| f().unwrap_or_else(|e| Check::new(*name, false, format!("error: {e}"))))
            .collect()
    });
    let mut t = Table::new(&["check", "status", "detail"]);
    for c in &checks {
        t.push(vec![c.name.clone().into(), (if c.pass { "PASS" } else { "FAIL" }).into(), c.detail.clone().into()]);
    }
    let mut config = RunConfig::new("verify", &args.output);
    config.jobs = args.jobs;
    let mut doc = Document::new(&config, t);
    doc.checks = checks;
    Ok(doc)
}

fn params(l: f64, b: f64) -> ptho_core::Result<TransformParams> {
    validate(l, b, 1.0)
}

fn table_check(which: u8) -> ptho_core::Result<Check> {
    let spec = table(which)?;
    let mut worst = 0.0f64;
    for col in spec.columns {
        let p = params(col.lambda, col.beta)?;
        let h = build_hamiltonian(&p, &FrequencyChoice::select(&p, spec.mode, None)?, TABLE_BASIS)?;
        let r = qr_eigenvalues(&h, &QrOptions::default())?;
        worst = TABLE_ROWS.iter().map(|&n| deviation(n, r.eigenvalues[n])).fold(worst, f64::max);
    }
    Ok(Check::new(format!("table {which}"), worst <= TABLE_TOLERANCE, format!("max deviation {worst:e}")))
}

fn commutator_check() -> ptho_core::Result<Check> {
    const N: usize = 60;
    let mut worst = 0.0f64;
    for (mode, col) in all_columns() {
        let p = params(col.lambda, col.beta)?;
        let w = FrequencyChoice::select(&p, mode, None)?;
        let spec = FockBasisSpec::new(N, w.omega, 1.0)?;
        let xp = commutator(&build_position(&spec)?, &build_momentum(&spec)?)?;
        let (r, y) = build_transformed_ops(&p, &w, N)?;
        let yr = commutator(&y, &r)?.scaled(C64::new(1.0 / p.norm_factor(), 0.0));
        worst = worst.max(yr.max_abs_diff_block(&xp, N - 2)?);
    }
    Ok(Check::new("commutator invariance", worst <= 1e-12, format!("max deviation {worst:e}")))
}

fn corrections_check() -> ptho_core::Result<Check> {
    let mut worst = 0.0f64;
    for (mode, col) in all_columns() {
        let p = params(col.lambda, col.beta)?;
        let w = FrequencyChoice::select(&p, mode, None)?;
        for n in 0..=10 {
            for order in 1..=3 {
                worst = worst.max(correction(&p, &w, n, order, default_basis(n, 4))?.abs());
            }
        }
    }
    Ok(Check::new("vanishing corrections", worst <= super::CORRECTION_TOL, format!("max |correction| {worst:e}")))
}

fn overlap_check() -> ptho_core::Result<Check> {
    let mut worst = 0.0f64;
    let mut exact = true;
    for (mode, col) in all_columns() {
        let p = params(col.lambda, col.beta)?;
        for n in 0..=10 {
            for k in 0..=6 {
                let o = overlap_identities(&p, mode, n, k, default_basis(n, k))?;
                exact &= o.norm_overlap == 1.0;
                worst = worst.max((o.energy_overlap + n as f64 + 0.5).abs());
            }
        }
    }
    Ok(Check::new("overlap identities", exact && worst <= 1e-12, format!("norm exact: {exact}, max energy deviation {worst:e}")))
}

fn terminating_check() -> ptho_core::Result<Check> {
    let mut worst = 0.0f64;
    for col in table(2)?.columns {
        let p = params(col.lambda, col.beta)?;
        for n in 0..=10 {
            worst = worst.max(eigen_residual(&p, FrequencyMode::Omega2, n, n / 2, default_basis(n, 0))?);
        }
    }
    Ok(Check::new("terminating series", worst <= 1e-12, format!("max residual {worst:e}")))
}

fn contraction_check() -> ptho_core::Result<Check> {
    let p = params(2.0, 7.0)?;
    let r = (1..=8)
        .map(|k| eigen_residual(&p, FrequencyMode::Omega1, 0, k, default_basis(0, k)))
        .collect::<ptho_core::Result<Vec<_>>>()?;
    let decreasing = r.windows(2).all(|w| w[1] < w[0]);
    Ok(Check::new("series contraction", decreasing, format!("k=1 {:e} to k=8 {:e}", r[0], r[7])))
}

fn fast_path_check() -> ptho_core::Result<Check> {
    let mut worst = 0.0f64;
    let mut trace = 0.0f64;
    let mut triangular = true;
    for (mode, col) in all_columns() {
        let p = params(col.lambda, col.beta)?;
        let h = build_hamiltonian(&p, &FrequencyChoice::select(&p, mode, None)?, TABLE_BASIS)?;
        let norm = h.frobenius_norm();
        let qr = qr_eigenvalues(&h, &QrOptions::default())?;
        trace = trace.max((qr.trace() - h.trace()).norm() / norm);
        match triangular_fast_path(&h, TRIANGULAR_BAND_TOL_REL * norm) {
            Some(fast) => {
                for i in 0..TABLE_BASIS.div_ceil(2) {
                    worst = worst.max((fast.eigenvalues[i] - qr.eigenvalues[i]).norm());
                }
            }
            None => triangular = false,
        }
    }
    Ok(Check::new(
        "fast path agreement",
        triangular && worst <= 1e-6 && trace <= 1e-8,
        format!("max |fast − qr| {worst:e}, trace error {trace:e}·‖H‖_F"),
    ))
}
