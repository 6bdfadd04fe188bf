use proptest::prelude::*;

use ptho_core::model::{validate, FrequencyChoice, FrequencyMode};
use ptho_core::perturbation::default_basis;
use ptho_core::{
    build_hamiltonian, build_ladder, build_momentum, build_position, certify, commutator,
    dense_product, eigen_residual, qr_eigenvalues, series_coefficients, FockBasisSpec,
    OperatorMatrix, QrOptions, C64,
};

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `f^k √(m!/n!) / (2^k k!)` with `m = n ± 2k`, signed by `f^k`.
fn closed_form_coefficient(f: f64, n: usize, k: usize, raising: bool) -> f64 {
    let ln_ratio = if raising {
        ln_factorial(n + 2 * k) - ln_factorial(n)
    } else {
        ln_factorial(n) - ln_factorial(n - 2 * k)
    };
    let mag = (k as f64 * f.abs().ln() + 0.5 * ln_ratio - k as f64 * 2f64.ln() - ln_factorial(k)).exp();
    if f < 0.0 && k % 2 == 1 {
        -mag
    } else {
        mag
    }
}

/// Only the first neglected term survives in `Hv + (n+½)v` at ω₁.
fn omega1_residual_closed_form(f: f64, n: usize, k_max: usize) -> f64 {
    let c: Vec<f64> = (0..=k_max).map(|k| closed_form_coefficient(f, n, k, true)).collect();
    let top = (n + 2 * k_max) as f64;
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    (f * c[k_max]).abs() * ((top + 1.0) * (top + 2.0)).sqrt() / norm
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn truncated_ccr_only_breaks_at_corner(n in 2usize..200) {
        let spec = FockBasisSpec::new(n, 1.0, 1.0).unwrap();
        let (a, adag) = build_ladder(&spec).unwrap();
        let ccr = commutator(&a, &adag).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = match (i == j, i == n - 1) {
                    (true, true) => -((n - 1) as f64),
                    (true, false) => 1.0,
                    _ => 0.0,
                };
                // √k·√k is exact only up to rounding
                prop_assert!((ccr[(i, j)] - C64::new(want, 0.0)).norm() <= 1e-15 * n as f64, "entry ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn xp_ccr_holds_for_any_scale(n in 2usize..60, log_w in -1.0f64..1.0, log_s in -1.0f64..1.0) {
        let spec = FockBasisSpec::new(n, 10f64.powf(log_w), 10f64.powf(log_s)).unwrap();
        let x = build_position(&spec).unwrap();
        let p = build_momentum(&spec).unwrap();
        let ccr = commutator(&x, &p).unwrap();
        let want = OperatorMatrix::identity(n).scaled(C64::new(0.0, 1.0));
        prop_assert!(ccr.max_abs_diff_block(&want, n - 1).unwrap() < 1e-12);
    }

    #[test]
    fn series_recurrence_matches_closed_form(
        lambda in 0.0f64..6.0,
        beta in 0.0f64..9.0,
        n in 0usize..=6,
        k_max in 0usize..=8,
    ) {
        let p = validate(lambda, beta, 1.0).unwrap();
        let f = p.ladder_factor();
        for (mode, raising) in [(FrequencyMode::Omega1, true), (FrequencyMode::Omega2, false)] {
            let Ok(s) = series_coefficients(&p, mode, n, k_max) else { continue };
            for (k, &c) in s.coeffs.iter().enumerate() {
                let want = closed_form_coefficient(f, n, k, raising);
                prop_assert!((c - want).abs() <= 1e-12 * want.abs().max(f64::MIN_POSITIVE), "{:?} k={}: {} vs {}", mode, k, c, want);
            }
        }
    }

    #[test]
    fn omega1_residual_matches_first_neglected_term(
        lambda in 0.0f64..4.0,
        beta in 1.05f64..9.0,
        n in 0usize..=10,
        k_max in 0usize..=8,
    ) {
        let p = validate(lambda, beta, 1.0).unwrap();
        let r = eigen_residual(&p, FrequencyMode::Omega1, n, k_max, default_basis(n, k_max)).unwrap();
        let want = omega1_residual_closed_form(p.ladder_factor(), n, k_max);
        prop_assert!((r - want).abs() <= 1e-10 * want, "{} vs {}", r, want);
    }

    #[test]
    fn ground_state_residual_contracts_for_small_f(lambda in 0.0f64..4.0, beta in 1.05f64..12.0) {
        let p = validate(lambda, beta, 1.0).unwrap();
        prop_assume!(p.ladder_factor().abs() <= 0.75);
        let r: Vec<f64> = (1..=8)
            .map(|k| eigen_residual(&p, FrequencyMode::Omega1, 0, k, default_basis(0, k)).unwrap())
            .collect();
        for w in r.windows(2) {
            prop_assert!(w[1] < w[0], "{:?}", r);
        }
    }
}

#[test]
fn contraction_needs_more_than_unit_factor() {
    // |f| = 0.9 < 1, yet the ground-state residual grows from k=1 to k=2
    let beta: f64 = 9.0;
    let lambda = (beta - 0.9) / (0.9 * beta - 1.0);
    let p = validate(lambda, beta, 1.0).unwrap();
    assert!((p.ladder_factor().abs() - 0.9).abs() < 1e-12);
    let r1 = eigen_residual(&p, FrequencyMode::Omega1, 0, 1, default_basis(0, 1)).unwrap();
    let r2 = eigen_residual(&p, FrequencyMode::Omega1, 0, 2, default_basis(0, 2)).unwrap();
    assert!(r2 > r1);
}

fn similarity(h: &OperatorMatrix, d: &[f64]) -> OperatorMatrix {
    OperatorMatrix::from_fn(h.dim(), "D⁻¹HD", |i, j| h[(i, j)] * (d[j] / d[i]))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn spectrum_survives_diagonal_similarity(
        d in prop::collection::vec(0.5f64..2.0, 40),
        column in 0usize..3,
    ) {
        let (lambda, beta, freq) = [
            (2.0, 7.0, FrequencyMode::Omega1),
            (3.0, 1.0, FrequencyMode::Omega2),
            (1.0, 3.0, FrequencyMode::Custom),
        ][column];
        let p = validate(lambda, beta, 1.0).unwrap();
        let w = FrequencyChoice::select(&p, freq, Some(2.0)).unwrap();
        let h = build_hamiltonian(&p, &w, 40).unwrap();
        let mut base = qr_eigenvalues(&h, &QrOptions::default()).unwrap();
        certify(&h, &mut base, 40).unwrap();
        let moved = qr_eigenvalues(&similarity(&h, &d), &QrOptions::default()).unwrap();
        for i in 0..base.trusted_count {
            prop_assert!((base.eigenvalues[i] - moved.eigenvalues[i]).norm() < 1e-8, "column {} index {}: {} vs {} (trusted {})", column, i, base.eigenvalues[i], moved.eigenvalues[i], base.trusted_count);
        }
    }
}

#[test]
fn trusted_prefix_is_certified() {
    let p = validate(1.0, 3.0, 1.0).unwrap();
    let h = build_hamiltonian(&p, &FrequencyChoice::custom(2.0).unwrap(), 120).unwrap();
    let mut r = qr_eigenvalues(&h, &QrOptions::default()).unwrap();
    certify(&h, &mut r, 120).unwrap();
    let tol = ptho_core::eigen::RESIDUAL_TRUST_REL * h.frobenius_norm();
    let res = r.residuals.as_ref().unwrap();
    assert!(r.trusted_count >= 11);
    assert!(res[..r.trusted_count].iter().all(|&x| x <= tol));
    assert!((r.trace() - h.trace()).norm() <= 1e-8 * h.frobenius_norm());
}

#[test]
fn triangular_product_keeps_shape() {
    // the ω₁ Hamiltonian squared stays lower triangular
    let p = validate(2.0, 7.0, 1.0).unwrap();
    let w = FrequencyChoice::select(&p, FrequencyMode::Omega1, None).unwrap();
    let h = build_hamiltonian(&p, &w, 30).unwrap();
    let h2 = dense_product(&h, &h).unwrap();
    assert!(h2.max_abs_strict_upper() < 1e-12 * h2.max_abs());
}
