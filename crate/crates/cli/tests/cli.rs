use std::process::{Command, Output};

use clap::Parser;
use ptho_cli::args::Cli;
use ptho_cli::output::{read_document, read_spectrum};

fn ptho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptho")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, split on commas (no quoted cells expected).
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn field(row: &[String], i: usize) -> f64 {
    row[i].parse().unwrap()
}

#[test]
fn table_one_passes_every_cell() {
    let o = ptho(&["table", "1", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 44);
    assert!(r.iter().all(|row| row[7] == "PASS"));
    let cell = r.iter().find(|row| row[0] == "50" && row[1] == "1.0" && row[2] == "3.0").unwrap();
    assert!((field(cell, 4) + 50.5).abs() < 1e-6);
}

#[test]
fn table_two_first_cell() {
    let o = ptho(&["table", "2", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let cell = r.iter().find(|row| row[0] == "0" && row[1] == "1.5" && row[2] == "0.5").unwrap();
    assert!((field(cell, 4) + 0.5).abs() < 1e-6);
}

#[test]
fn listing_truncation_fails_last_row() {
    let o = ptho(&["table", "1", "--truncation", "listing", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1));
    let r = rows(&stdout(&o));
    assert!(r.iter().filter(|row| row[7] == "FAIL").all(|row| row[0] == "50"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL column"));
}

#[test]
fn spectrum_first_row_and_trust_flags() {
    let o = ptho(&["spectrum", "--lambda", "2", "--beta", "7", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("n,re,im,residual,trusted\n0,-0.5,0.0,"));
    assert!(text.contains("# method=qr"));
    let r = rows(&text);
    assert_eq!(r.len(), 100);
    assert_eq!(r[49][4], "true");
    assert_eq!(r[50][4], "false");
    assert_eq!(r[50][3], "");
}

#[test]
fn plain_oscillator_is_positive() {
    let o = ptho(&["spectrum", "--lambda", "0", "--beta", "0", "--mode", "custom", "--omega", "1", "--n-basis", "20", "--no-timestamp"]);
    let r = rows(&stdout(&o));
    for (n, row) in r.iter().take(10).enumerate() {
        assert!((field(row, 1) - (n as f64 + 0.5)).abs() < 1e-12);
    }
}

#[test]
fn custom_frequency_improves_with_basis() {
    let dev = |n: &str| {
        let o = ptho(&["spectrum", "--lambda", "1", "--beta", "3", "--mode", "custom", "--omega", "2", "--n-basis", n, "--no-timestamp"]);
        rows(&stdout(&o))
            .iter()
            .take(11)
            .enumerate()
            .map(|(k, row)| (field(row, 1) + k as f64 + 0.5).hypot(field(row, 2)))
            .fold(0.0, f64::max)
    };
    assert!(dev("200") < dev("100"));
}

#[test]
fn spectrum_json_round_trips_bit_exactly() {
    let cli = Cli::parse_from(["ptho", "spectrum", "--lambda", "1", "--beta", "3", "--mode", "custom", "--omega", "2", "--n-basis", "40", "--format", "json"]);
    let (doc, _) = ptho_cli::execute(&cli.command).unwrap();
    let json = doc.to_json().unwrap();
    let back = read_spectrum(&json).unwrap();
    let ptho_cli::args::Command::Spectrum(args) = &cli.command else { unreachable!() };
    let again = ptho_cli::commands::cmd_spectrum(args).unwrap();
    let original: ptho_core::SpectralReport = serde_json::from_value(again.results.unwrap()["report"].clone()).unwrap();
    assert_eq!(back, original);
    for (a, b) in back.eigenvalues.iter().zip(&original.eigenvalues) {
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
    let parsed = read_document(&json).unwrap();
    assert_eq!(parsed.config["n_basis"], 40);
}

#[test]
fn json_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let o = ptho(&["spectrum", "--lambda", "2", "--beta", "7", "--n-basis", "30", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let report = read_spectrum(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.n_basis, 30);
    assert_eq!(report.eigenvalues[0].re, -0.5);
}

#[test]
fn csv_is_deterministic_without_timestamp() {
    let args = ["spectrum", "--lambda", "1", "--beta", "3", "--mode", "custom", "--omega", "2", "--n-basis", "30", "--no-timestamp"];
    assert_eq!(ptho(&args).stdout, ptho(&args).stdout);
    let stamped = stdout(&ptho(&args[..args.len() - 1]));
    assert!(stamped.contains("# timestamp="));
}

#[test]
fn perturb_exit_codes() {
    let ok = ptho(&["perturb", "--lambda", "2", "--beta", "7", "--state", "0..5", "--no-timestamp"]);
    assert_eq!(ok.status.code(), Some(0));
    let r = rows(&stdout(&ok));
    assert_eq!(r.len(), 6);
    assert!(r.iter().all(|row| (3..=6).all(|i| field(row, i) == 0.0)));

    let off = ptho(&["perturb", "--lambda", "2", "--beta", "7", "--mode", "custom", "--omega", "2.02", "--state", "0"]);
    assert_eq!(off.status.code(), Some(1));

    let bad = ptho(&["perturb", "--lambda", "0", "--beta", "0"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("beta > 1"));
}

#[test]
fn perturb_energy_overlap() {
    let o = ptho(&["perturb", "--lambda", "3", "--beta", "1", "--mode", "omega2", "--state", "4", "--no-timestamp"]);
    let r = rows(&stdout(&o));
    assert!((field(&r[0], 8) + 4.5).abs() < 1e-12);
    assert_eq!(field(&r[0], 7), 1.0);
}

#[test]
fn wavefunction_decays_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("w.svg");
    let o = ptho(&["wavefunction", "--lambda", "3", "--beta", "1", "--mode", "omega2", "--state", "2", "--plot", svg.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# series_terms=2"));
    let r = rows(&text);
    assert!(field(&r[0], 2).abs() < 1e-6 && field(r.last().unwrap(), 2).abs() < 1e-6);
    assert!(std::fs::read_to_string(&svg).unwrap().matches("<polyline").count() == 2);
}

#[test]
fn wavefunction_zero_order_is_basis() {
    let o = ptho(&["wavefunction", "--lambda", "2", "--beta", "7", "--state", "0", "--k-max", "0", "--no-timestamp"]);
    for row in rows(&stdout(&o)) {
        assert_eq!(row[1], row[2]);
    }
}

#[test]
fn wavefunction_residual_contracts() {
    let residual = |k: &str| -> f64 {
        let o = ptho(&["wavefunction", "--lambda", "2", "--beta", "7", "--state", "0", "--k-max", k, "--no-timestamp"]);
        let text = stdout(&o);
        let line = text.lines().find(|l| l.starts_with("# eigen_residual=")).unwrap();
        line["# eigen_residual=".len()..].parse().unwrap()
    };
    assert!(residual("6") < residual("2"));
}

#[test]
fn narrow_grid_is_a_config_error() {
    let o = ptho(&["wavefunction", "--lambda", "3", "--beta", "1", "--mode", "omega2", "--state", "4", "--half-width", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn custom_mode_needs_omega() {
    let o = ptho(&["spectrum", "--mode", "custom"]);
    assert_eq!(o.status.code(), Some(3));
    let o = ptho(&["spectrum", "--mode", "omega1", "--omega", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sweep_rows_in_input_order() {
    let args = ["sweep", "--lambdas", "1,2", "--betas", "3,7", "--n-basis", "50,100", "--no-timestamp"];
    let single = ptho(&[&args[..], &["--jobs", "1"]].concat());
    let many = ptho(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(single.status.code(), Some(0));
    let r = rows(&stdout(&single));
    assert_eq!(r.len(), 8);
    assert!(r.iter().all(|row| row[4] == "ok" && field(row, 6) < 1e-6));
    assert_eq!((r[0][0].as_str(), r[0][1].as_str(), r[0][2].as_str()), ("1.0", "3.0", "50"));
    assert_eq!((r[7][0].as_str(), r[7][1].as_str(), r[7][2].as_str()), ("2.0", "7.0", "100"));
    // the jobs setting appears in metadata only
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with("# jobs=")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&single), strip(&many));
}

#[test]
fn sweep_flags_invalid_domain_and_handles_empty() {
    let o = ptho(&["sweep", "--lambdas", "1", "--betas", "0.5,3", "--n-basis", "20", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("invalid-domain"));
    assert!(text.lines().last().unwrap().contains(",ok,"));

    let empty = ptho(&["sweep", "--lambdas", "", "--no-timestamp"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).ends_with("lambda,beta,n_basis,omega,status,trusted_count,max_deviation,iterations\n"));

    assert_eq!(ptho(&["sweep", "--jobs", "0"]).status.code(), Some(3));
}

#[test]
fn verify_passes() {
    let o = ptho(&["verify", "--no-timestamp", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = read_document(&stdout(&o)).unwrap();
    assert_eq!(doc.checks.len(), 8);
    assert!(doc.checks.iter().all(|c| c.pass));
}
