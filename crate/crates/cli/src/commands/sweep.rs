use ptho_core::eigen::trusted_limit;
use ptho_core::{build_hamiltonian_with, certify, qr_eigenvalues, validate, Error, FrequencyChoice, FrequencyMode, QrOptions, Truncation};
use rayon::prelude::*;

use super::{deviation, thread_pool, truncation_name};
use crate::args::{parse_sizes, parse_values, SweepArgs};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{Cell, Document, Table};

#[derive(Debug, Clone, Copy)]
struct Point {
    lambda: f64,
    beta: f64,
    n_basis: usize,
}

enum PointResult {
    Done { omega: f64, trusted: usize, max_dev: f64, iterations: usize },
    InvalidDomain(String),
    Failed(String),
}

/// Cartesian product `λ × β × N`, evaluated concurrently. Rows keep input
/// order; a failing point is recorded in its row.
pub fn cmd_sweep(args: &SweepArgs) -> CliResult<Document> {
    let lambdas = parse_values(&args.lambdas)?;
    let betas = parse_values(&args.betas)?;
    let sizes = parse_sizes(&args.n_basis)?;
    let mode: FrequencyMode = args.mode.into();
    let truncation: Truncation = args.truncation.into();
    let mut points = Vec::with_capacity(lambdas.len() * betas.len() * sizes.len());
    for &lambda in &lambdas {
        for &beta in &betas {
            points.extend(sizes.iter().map(|&n_basis| Point { lambda, beta, n_basis }));
        }
    }

    let pool = thread_pool(args.jobs)?;
    let results: Vec<PointResult> =
        pool.install(|| points.par_iter().map(|p| evaluate(p, mode, args.omega, args.scale, truncation)).collect());

    let mut table = Table::new(&["lambda", "beta", "n_basis", "omega", "status", "trusted_count", "max_deviation", "iterations"]);
    for (p, r) in points.iter().zip(results) {
        let head: Vec<Cell> = vec![p.lambda.into(), p.beta.into(), p.n_basis.into()];
        let tail: Vec<Cell> = match r {
            PointResult::Done { omega, trusted, max_dev, iterations } => {
                vec![omega.into(), "ok".into(), trusted.into(), max_dev.into(), iterations.into()]
            }
            PointResult::InvalidDomain(msg) => vec![Cell::Empty, format!("invalid-domain: {msg}").into(), Cell::Empty, Cell::Empty, Cell::Empty],
            PointResult::Failed(msg) => vec![Cell::Empty, format!("error: {msg}").into(), Cell::Empty, Cell::Empty, Cell::Empty],
        };
        table.push(head.into_iter().chain(tail).collect());
    }

    let mut config = RunConfig::new("sweep", &args.output);
    config.mode = Some(mode.to_string());
    config.omega = args.omega;
    config.scale = Some(args.scale);
    config.truncation = Some(truncation_name(truncation).into());
    config.lambdas = Some(lambdas);
    config.betas = Some(betas);
    config.n_basis_list = Some(sizes);
    config.jobs = args.jobs;
    Ok(Document::new(&config, table))
}

fn evaluate(p: &Point, mode: FrequencyMode, omega: Option<f64>, scale: f64, truncation: Truncation) -> PointResult {
    let freq = validate(p.lambda, p.beta, scale).and_then(|params| Ok((params, FrequencyChoice::select(&params, mode, omega)?)));
    let (params, freq) = match freq {
        Ok(v) => v,
        Err(e @ (Error::Domain(_) | Error::FrequencyDomain { .. } | Error::SingularTransform(_))) => {
            return PointResult::InvalidDomain(e.to_string())
        }
        Err(e) => return PointResult::Failed(e.to_string()),
    };
    let run = || -> ptho_core::Result<PointResult> {
        let h = build_hamiltonian_with(&params, &freq, p.n_basis, truncation)?;
        let mut report = qr_eigenvalues(&h, &QrOptions::default())?;
        certify(&h, &mut report, trusted_limit(p.n_basis))?;
        let max_dev = (0..report.trusted_count).map(|n| deviation(n, report.eigenvalues[n])).fold(0.0, f64::max);
        Ok(PointResult::Done { omega: freq.omega, trusted: report.trusted_count, max_dev, iterations: report.iterations })
    };
    run().unwrap_or_else(|e| PointResult::Failed(e.to_string()))
}
