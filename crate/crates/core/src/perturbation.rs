//! Rayleigh–Schrödinger analysis around the diagonal part `H_D`.
//!
//! At `ω₁` the perturbation is `H_N = f·(a⁺)²` and at `ω₂` it is `−f·a²`,
//! with `f = −(λ+β)/(1+λβ)`. Both only step one way along the ladder, so
//! every Rayleigh–Schrödinger term contains a vanishing matrix element and
//! the series eigenvector of `|n⟩` extends in one direction only:
//!
//! ```text
//! ω₁:  c_k = f·c_{k−1}·√((n+2k)(n+2k−1)) / (2k)      over |n+2k⟩
//! ω₂:  c_k = f·c_{k−1}·√((n−2k+2)(n−2k+1)) / (2k)    over |n−2k⟩, k ≤ ⌊n/2⌋
//! ```
//!
//! These are obtained by substituting the series into `HΨ = −(n+½)Ψ` term
//! by term and close to `c_k = f^k √((n+2k)!/n!) / (2^k k!)` and
//! `c_k = f^k √(n!/(n−2k)!) / (2^k k!)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    build_hamiltonian, closed_form_spectrum, coefficients, omega1, omega2, CoefficientSet,
    FrequencyChoice, FrequencyMode, TransformParams,
};
use crate::C64;

/// Default series order.
pub const DEFAULT_K_MAX: usize = 8;

/// `|f|` at or above this is treated as non-contracting.
pub const UNIT_FACTOR_MARGIN: f64 = 1e-9;

/// Basis size that keeps the truncation band clear of a series of order
/// `k_max` built on `|n⟩`.
pub fn default_basis(n: usize, k_max: usize) -> usize {
    n + 2 * k_max + 4
}

/// `⟨row|H_N|col⟩ = U/(4(1+λβ))·⟨row|a²|col⟩ + V/(4(1+λβ))·⟨row|a⁺²|col⟩`.
pub fn hn_element(params: &TransformParams, freq: &FrequencyChoice, row: usize, col: usize) -> f64 {
    element(&coefficients(params, freq), row, col)
}

fn element(c: &CoefficientSet, row: usize, col: usize) -> f64 {
    if row + 2 == col {
        c.lowering_coeff() * ((col * (col - 1)) as f64).sqrt()
    } else if row == col + 2 {
        c.raising_coeff() * (((col + 1) * (col + 2)) as f64).sqrt()
    } else {
        0.0
    }
}

/// Order-`order` Rayleigh–Schrödinger correction to level `n`, summed
/// explicitly over the intermediate states `0..n_basis`.
pub fn correction(
    params: &TransformParams,
    freq: &FrequencyChoice,
    n: usize,
    order: usize,
    n_basis: usize,
) -> Result<f64> {
    if n >= n_basis {
        return Err(Error::BasisTooSmall { n_basis, required: n });
    }
    let c = coefficients(params, freq);
    if c.diag_coeff == 0.0 {
        return Err(Error::DegenerateSpectrum);
    }
    let e_n = c.unperturbed_energy(n);
    let gap = |k: usize| e_n - c.unperturbed_energy(k);
    let v = |i: usize, j: usize| element(&c, i, j);
    let others = || (0..n_basis).filter(move |&k| k != n);

    let value = match order {
        1 => v(n, n),
        2 => others().map(|k| v(n, k) * v(k, n) / gap(k)).sum(),
        3 => {
            let mut s = 0.0;
            for k in others() {
                let vnk = v(n, k);
                if vnk == 0.0 {
                    continue;
                }
                for m in others() {
                    s += vnk * v(k, m) * v(m, n) / (gap(k) * gap(m));
                }
            }
            let renorm: f64 = others().map(|k| v(n, k) * v(k, n) / (gap(k) * gap(k))).sum();
            s - v(n, n) * renorm
        }
        other => return Err(Error::Domain(format!("correction order {other} not in 1..=3"))),
    };
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationReport {
    pub n: usize,
    pub mode: FrequencyMode,
    pub epsilon0: f64,
    /// `ε⁽¹⁾, ε⁽²⁾, ε⁽³⁾`.
    pub corrections: Vec<f64>,
    pub k_max: usize,
}

impl PerturbationReport {
    pub fn max_abs_correction(&self) -> f64 {
        self.corrections.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

pub fn perturbation_report(
    params: &TransformParams,
    freq: &FrequencyChoice,
    n: usize,
    n_basis: usize,
) -> Result<PerturbationReport> {
    let corrections = (1..=3)
        .map(|order| correction(params, freq, n, order, n_basis))
        .collect::<Result<Vec<_>>>()?;
    Ok(PerturbationReport {
        n,
        mode: freq.mode,
        epsilon0: coefficients(params, freq).unperturbed_energy(n),
        corrections,
        k_max: 3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeriesWarning {
    /// `|f| ≥ 1`: the ω₁ series does not contract.
    NonContracting { f: f64 },
    /// `|c_k|` grew for three consecutive orders ending at `k`.
    Divergent { k: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesWavefunction {
    pub n: usize,
    pub mode: FrequencyMode,
    /// Real-space frequency of the basis functions, `ω/s²`.
    pub omega: f64,
    pub coeffs: Vec<f64>,
    pub k_max: usize,
    pub terminated: bool,
    pub warnings: Vec<SeriesWarning>,
}

impl SeriesWavefunction {
    /// Fock index carrying `coeffs[k]`.
    pub fn fock_index(&self, k: usize) -> usize {
        match self.mode {
            FrequencyMode::Omega2 => self.n - 2 * k,
            _ => self.n + 2 * k,
        }
    }

    /// Highest Fock index present.
    pub fn top_index(&self) -> usize {
        match self.mode {
            FrequencyMode::Omega2 => self.n,
            _ => self.fock_index(self.coeffs.len() - 1),
        }
    }

    pub fn to_fock_vector(&self, n_basis: usize) -> Result<Vec<C64>> {
        if self.top_index() >= n_basis {
            return Err(Error::BasisTooSmall { n_basis, required: self.top_index() });
        }
        let mut v = vec![C64::new(0.0, 0.0); n_basis];
        for (k, &c) in self.coeffs.iter().enumerate() {
            v[self.fock_index(k)] = C64::new(c, 0.0);
        }
        Ok(v)
    }
}

fn mode_frequency(params: &TransformParams, mode: FrequencyMode) -> Result<FrequencyChoice> {
    match mode {
        FrequencyMode::Omega1 => omega1(params),
        FrequencyMode::Omega2 => omega2(params),
        FrequencyMode::Custom => Err(Error::UnsupportedMode(
            "series eigenvectors exist only at omega1 or omega2".into(),
        )),
    }
}

/// Series eigenvector of `|n⟩` up to order `k_max` (capped at `⌊n/2⌋` in
/// mode ω₂) from the term-by-term eigen-recurrence.
pub fn series_coefficients(
    params: &TransformParams,
    mode: FrequencyMode,
    n: usize,
    k_max: usize,
) -> Result<SeriesWavefunction> {
    let freq = mode_frequency(params, mode)?;
    let f = params.ladder_factor();
    let order = match mode {
        FrequencyMode::Omega2 => k_max.min(n / 2),
        _ => k_max,
    };
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(1.0);
    for k in 1..=order {
        let m = match mode {
            FrequencyMode::Omega2 => ((n - 2 * k + 2) * (n - 2 * k + 1)) as f64,
            _ => ((n + 2 * k) * (n + 2 * k - 1)) as f64,
        };
        coeffs.push(f * coeffs[k - 1] * m.sqrt() / (2 * k) as f64);
    }

    let mut warnings = Vec::new();
    if mode == FrequencyMode::Omega1 && f.abs() >= 1.0 - UNIT_FACTOR_MARGIN {
        warnings.push(SeriesWarning::NonContracting { f });
    }
    let mut run = 0;
    for k in 1..coeffs.len() {
        run = if coeffs[k].abs() > coeffs[k - 1].abs() { run + 1 } else { 0 };
        if run == 3 {
            warnings.push(SeriesWarning::Divergent { k });
            break;
        }
    }

    Ok(SeriesWavefunction {
        n,
        mode,
        omega: freq.omega / (params.scale * params.scale),
        coeffs,
        k_max: order,
        terminated: mode == FrequencyMode::Omega2 && order == n / 2,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapIdentities {
    /// `⟨ψ_n|Ψ_n⟩`.
    pub norm_overlap: f64,
    /// `⟨ψ_n|H|Ψ_n⟩`.
    pub energy_overlap: f64,
}

struct SeriesSetup {
    series: SeriesWavefunction,
    vector: Vec<C64>,
    h_vector: Vec<C64>,
}

fn setup(
    params: &TransformParams,
    mode: FrequencyMode,
    n: usize,
    k_max: usize,
    n_basis: usize,
) -> Result<SeriesSetup> {
    let series = series_coefficients(params, mode, n, k_max)?;
    let required = series.top_index() + 2;
    if required >= n_basis {
        return Err(Error::BasisTooSmall { n_basis, required });
    }
    let freq = mode_frequency(params, mode)?;
    let h = build_hamiltonian(params, &freq, n_basis)?;
    let vector = series.to_fock_vector(n_basis)?;
    let h_vector = h.matvec(&vector)?;
    Ok(SeriesSetup { series, vector, h_vector })
}

pub fn overlap_identities(
    params: &TransformParams,
    mode: FrequencyMode,
    n: usize,
    k_max: usize,
    n_basis: usize,
) -> Result<OverlapIdentities> {
    let s = setup(params, mode, n, k_max, n_basis)?;
    Ok(OverlapIdentities {
        norm_overlap: s.vector[s.series.n].re,
        energy_overlap: s.h_vector[s.series.n].re,
    })
}

/// `‖Hv + (n+½)v‖ / ‖v‖` for the Fock-space series vector `v`.
pub fn eigen_residual(
    params: &TransformParams,
    mode: FrequencyMode,
    n: usize,
    k_max: usize,
    n_basis: usize,
) -> Result<f64> {
    let s = setup(params, mode, n, k_max, n_basis)?;
    let e = closed_form_spectrum(params, n);
    let num: f64 = s.h_vector.iter().zip(&s.vector).map(|(hv, v)| (hv - v * e).norm_sqr()).sum();
    let den: f64 = s.vector.iter().map(|v| v.norm_sqr()).sum();
    Ok((num / den).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;

    fn p(l: f64, b: f64) -> TransformParams {
        validate(l, b, 1.0).unwrap()
    }

    #[test]
    fn hn_elements() {
        let q = p(1.0, 3.0);
        let w = omega1(&q).unwrap();
        assert!((hn_element(&q, &w, 2, 0) + 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(hn_element(&q, &w, 0, 2), 0.0);
        let q = p(3.0, 1.0);
        let w = omega2(&q).unwrap();
        assert!((hn_element(&q, &w, 0, 2) - 2f64.sqrt()).abs() < 1e-14);
        assert!(hn_element(&q, &w, 2, 0).abs() < 1e-15);
    }

    #[test]
    fn hn_matches_ladder_factor_form() {
        for &(l, b) in &[(1.0, 3.0), (2.0, 7.0), (0.5, 5.5), (0.8, 8.2)] {
            let q = p(l, b);
            let w = omega1(&q).unwrap();
            let f = q.ladder_factor();
            for col in 0..10 {
                let want = f * (((col + 1) * (col + 2)) as f64).sqrt();
                assert!((hn_element(&q, &w, col + 2, col) - want).abs() < 1e-12);
            }
        }
        for &(l, b) in &[(3.0, 1.0), (2.0, 1.0), (1.5, 0.5), (1.5, 1.0)] {
            let q = p(l, b);
            let w = omega2(&q).unwrap();
            let g = -q.ladder_factor();
            for col in 2..12 {
                let want = g * ((col * (col - 1)) as f64).sqrt();
                assert!((hn_element(&q, &w, col - 2, col) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn corrections_vanish_at_selected_frequencies() {
        let q = p(2.0, 7.0);
        let w = omega1(&q).unwrap();
        for order in 1..=3 {
            assert!(correction(&q, &w, 0, order, 24).unwrap().abs() <= 1e-12);
        }
        let q = p(3.0, 1.0);
        let w = omega2(&q).unwrap();
        assert!(correction(&q, &w, 4, 3, 24).unwrap().abs() <= 1e-12);
        assert!(correction(&q, &w, 4, 4, 24).is_err());
    }

    #[test]
    fn corrections_detect_off_frequency() {
        let q = p(2.0, 7.0);
        let w = FrequencyChoice::custom(omega1(&q).unwrap().omega * 1.01).unwrap();
        let e2 = correction(&q, &w, 0, 2, 24).unwrap();
        assert!(e2.abs() > 1e-6, "e2 = {e2}");
    }

    #[test]
    fn series_examples() {
        let s = series_coefficients(&p(2.0, 7.0), FrequencyMode::Omega1, 0, 4).unwrap();
        assert_eq!(s.coeffs[0], 1.0);
        assert!((s.coeffs[1] + 0.6 * 2f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(s.warnings.is_empty());

        let s = series_coefficients(&p(3.0, 1.0), FrequencyMode::Omega2, 1, 8).unwrap();
        assert_eq!(s.coeffs, vec![1.0]);
        assert!(s.terminated);

        let s = series_coefficients(&p(3.0, 1.0), FrequencyMode::Omega2, 4, 8).unwrap();
        assert_eq!(s.coeffs.len(), 3);
        assert!((s.coeffs[1] + 3f64.sqrt()).abs() < 1e-14);
        assert!((s.coeffs[2] - 6f64.sqrt() / 4.0).abs() < 1e-14);
        assert_eq!((s.fock_index(1), s.fock_index(2)), (2, 0));
    }

    #[test]
    fn series_warnings() {
        let s = series_coefficients(&p(1.0, 3.0), FrequencyMode::Omega1, 0, 8).unwrap();
        assert!(s.warnings.contains(&SeriesWarning::NonContracting { f: -1.0 }));
        let s = series_coefficients(&p(0.5, 5.5), FrequencyMode::Omega1, 0, 10).unwrap();
        assert!(s.warnings.iter().any(|w| matches!(w, SeriesWarning::Divergent { .. })));
        assert!(matches!(
            series_coefficients(&p(1.0, 3.0), FrequencyMode::Custom, 0, 2),
            Err(Error::UnsupportedMode(_))
        ));
    }

    #[test]
    fn overlap_examples() {
        let o = overlap_identities(&p(2.0, 7.0), FrequencyMode::Omega1, 0, 4, 100).unwrap();
        assert_eq!(o.norm_overlap, 1.0);
        assert!((o.energy_overlap + 0.5).abs() < 1e-12);
        let o = overlap_identities(&p(3.0, 1.0), FrequencyMode::Omega2, 6, 3, 50).unwrap();
        assert!((o.energy_overlap + 6.5).abs() < 1e-12);
        assert!(matches!(
            overlap_identities(&p(2.0, 7.0), FrequencyMode::Omega1, 0, 4, 10),
            Err(Error::BasisTooSmall { .. })
        ));
    }

    #[test]
    fn residual_examples() {
        let r = eigen_residual(&p(3.0, 1.0), FrequencyMode::Omega2, 4, 2, 10).unwrap();
        assert!(r <= 1e-12, "r = {r}");
        let q = p(2.0, 7.0);
        let r6 = eigen_residual(&q, FrequencyMode::Omega1, 0, 6, default_basis(0, 6)).unwrap();
        let r2 = eigen_residual(&q, FrequencyMode::Omega1, 0, 2, default_basis(0, 2)).unwrap();
        assert!(r6 < r2);
    }

    #[test]
    fn zeroth_order_residual_is_first_neglected_term() {
        // |f| small needs large λ and β; the k=0 residual is |f|·√((n+1)(n+2)).
        let q = p(10.0, 100.0);
        let f = q.ladder_factor();
        assert!(f.abs() < 0.11);
        for n in 0..4 {
            let r = eigen_residual(&q, FrequencyMode::Omega1, n, 0, default_basis(n, 0)).unwrap();
            let want = f.abs() * (((n + 1) * (n + 2)) as f64).sqrt();
            assert!((r - want).abs() < 1e-12 * want.max(1.0), "n={n}: {r} vs {want}");
        }
    }
}
