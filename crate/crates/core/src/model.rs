//! Transformed oscillator: parameter domain, frequency selection, operator
//! assembly and the diagonal / off-diagonal coefficient split.
//!
//! With `x → (x + iλp)/√(1+λβ)` and `p → (p + iβx)/√(1+λβ)` the Hamiltonian
//! `(p² + x²)/2` becomes
//!
//! ```text
//! H = [(1−λ²) p² + (1−β²) x² + i(λ+β)(xp + px)] / (2(1+λβ))
//!   = D (2a⁺a + 1) + (U a² + V a⁺²) / (4(1+λβ))
//! ```
//!
//! where `D = [(1−λ²)ω + (1−β²)/ω] / (4(1+λβ))`. Choosing `ω = ω₁ = (β−1)/(1+λ)`
//! kills `U`, choosing `ω = ω₂ = (1+β)/(λ−1)` kills `V`; in both cases the
//! Fock matrix is triangular with diagonal `−(n+½)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{build_momentum, build_position, dense_axpy, dense_product, FockBasisSpec, OperatorMatrix};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformParams {
    pub lambda: f64,
    pub beta: f64,
    pub scale: f64,
}

impl TransformParams {
    /// `1 + λβ`, the square of the transform's normalization.
    pub fn norm_factor(&self) -> f64 {
        1.0 + self.lambda * self.beta
    }

    /// `f = −(λ+β)/(1+λβ)`, the ladder factor of the series eigenvectors.
    pub fn ladder_factor(&self) -> f64 {
        -(self.lambda + self.beta) / self.norm_factor()
    }
}

/// Validates `(λ, β, s)`. Negative `λ` or `β` is rejected before the
/// `1 + λβ > 0` check, so the singular case is only reachable through
/// non-finite inputs.
pub fn validate(lambda: f64, beta: f64, scale: f64) -> Result<TransformParams> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Domain(format!("lambda = {lambda} must be finite and >= 0")));
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::Domain(format!("beta = {beta} must be finite and >= 0")));
    }
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::Domain(format!("scale = {scale} must be finite and > 0")));
    }
    let norm = 1.0 + lambda * beta;
    if norm.is_nan() || norm <= 0.0 {
        return Err(Error::SingularTransform(norm));
    }
    Ok(TransformParams { lambda, beta, scale })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrequencyMode {
    Omega1,
    Omega2,
    Custom,
}

impl FrequencyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FrequencyMode::Omega1 => "omega1",
            FrequencyMode::Omega2 => "omega2",
            FrequencyMode::Custom => "custom",
        }
    }
}

impl std::fmt::Display for FrequencyMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FrequencyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "omega1" | "w1" => Ok(FrequencyMode::Omega1),
            "omega2" | "w2" => Ok(FrequencyMode::Omega2),
            "custom" => Ok(FrequencyMode::Custom),
            other => Err(Error::Domain(format!("unknown frequency mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyChoice {
    pub mode: FrequencyMode,
    pub omega: f64,
}

impl FrequencyChoice {
    pub fn custom(omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::FrequencyDomain { requirement: "omega > 0", got: omega });
        }
        Ok(Self { mode: FrequencyMode::Custom, omega })
    }

    /// Resolves `mode` for `params`; `omega` is only consulted for `Custom`.
    pub fn select(params: &TransformParams, mode: FrequencyMode, omega: Option<f64>) -> Result<Self> {
        match mode {
            FrequencyMode::Omega1 => omega1(params),
            FrequencyMode::Omega2 => omega2(params),
            FrequencyMode::Custom => Self::custom(omega.ok_or(Error::FrequencyDomain {
                requirement: "an explicit omega for custom mode",
                got: f64::NAN,
            })?),
        }
    }
}

/// `ω₁ = (β−1)/(1+λ)`, zeroing the `a²` coefficient. Requires `β > 1`.
pub fn omega1(params: &TransformParams) -> Result<FrequencyChoice> {
    if params.beta.is_nan() || params.beta <= 1.0 {
        return Err(Error::FrequencyDomain { requirement: "beta > 1", got: params.beta });
    }
    Ok(FrequencyChoice {
        mode: FrequencyMode::Omega1,
        omega: (params.beta - 1.0) / (1.0 + params.lambda),
    })
}

/// `ω₂ = (1+β)/(λ−1)`, zeroing the `(a⁺)²` coefficient. Requires `λ > 1`.
pub fn omega2(params: &TransformParams) -> Result<FrequencyChoice> {
    if params.lambda.is_nan() || params.lambda <= 1.0 {
        return Err(Error::FrequencyDomain { requirement: "lambda > 1", got: params.lambda });
    }
    Ok(FrequencyChoice {
        mode: FrequencyMode::Omega2,
        omega: (1.0 + params.beta) / (params.lambda - 1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    /// `1/(1+λβ)`.
    pub l: f64,
    /// Coefficient of `(2a⁺a + 1)`.
    pub diag_coeff: f64,
    pub u: f64,
    pub v: f64,
    pub f: f64,
    /// Frequency the coefficients were evaluated at, `ω/s²`.
    pub omega_eff: f64,
}

impl CoefficientSet {
    /// Coefficient of `a²` in the Hamiltonian, `U/(4(1+λβ))`.
    pub fn lowering_coeff(&self) -> f64 {
        self.u * self.l / 4.0
    }

    /// Coefficient of `(a⁺)²` in the Hamiltonian, `V/(4(1+λβ))`.
    pub fn raising_coeff(&self) -> f64 {
        self.v * self.l / 4.0
    }

    /// Unperturbed level `D (2n+1)`.
    pub fn unperturbed_energy(&self, n: usize) -> f64 {
        self.diag_coeff * (2 * n + 1) as f64
    }
}

/// Evaluates `L`, `D`, `U`, `V` and `f`. A basis scale `s` enters as the
/// effective frequency `ω/s²`, since `x → s x`, `p → p/s` is equivalent to
/// rescaling `ω`.
pub fn coefficients(params: &TransformParams, freq: &FrequencyChoice) -> CoefficientSet {
    let (lam, beta) = (params.lambda, params.beta);
    let w = freq.omega / (params.scale * params.scale);
    let l = 1.0 / params.norm_factor();
    let common = (1.0 - beta * beta) / w - w * (1.0 - lam * lam);
    CoefficientSet {
        l,
        diag_coeff: ((1.0 - lam * lam) * w + (1.0 - beta * beta) / w) * l / 4.0,
        u: common + 2.0 * (lam + beta),
        v: common - 2.0 * (lam + beta),
        f: params.ladder_factor(),
        omega_eff: w,
    }
}

/// `H = A p² + B x² + C (xp + px)` with `C = i·c_imag`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    pub a: f64,
    pub b: f64,
    pub c_imag: f64,
}

impl QuadraticForm {
    pub fn new(params: &TransformParams) -> Self {
        let denom = 2.0 * params.norm_factor();
        Self {
            a: (1.0 - params.lambda * params.lambda) / denom,
            b: (1.0 - params.beta * params.beta) / denom,
            c_imag: (params.lambda + params.beta) / denom,
        }
    }

    /// `AB − C²`; the spectrum magnitude is `2√(AB−C²)(n+½)`.
    pub fn determinant(&self) -> f64 {
        self.a * self.b + self.c_imag * self.c_imag
    }
}

/// `−(n+½)`, the spectrum on the validated domain.
pub fn closed_form_spectrum(_params: &TransformParams, n: usize) -> f64 {
    -(n as f64 + 0.5)
}

/// How the finite Hamiltonian matrix is formed from truncated operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truncation {
    /// Square `N×N` truncated `R` and `Y` directly. The `a a⁺` term then loses
    /// its last diagonal entry, leaving a spurious `−(N−1)/2` at the corner.
    Listing,
    /// Form `R² + Y²` in an `N+2` basis and keep the leading `N×N` block, so
    /// every entry is the exact Fock matrix element.
    #[default]
    Projected,
}

impl std::str::FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "listing" => Ok(Truncation::Listing),
            "projected" => Ok(Truncation::Projected),
            other => Err(Error::Domain(format!("unknown truncation '{other}'"))),
        }
    }
}

/// Un-normalized transformed operators `R = p + iβx`, `Y = x + iλp`.
pub fn build_transformed_ops(
    params: &TransformParams,
    freq: &FrequencyChoice,
    n_basis: usize,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let spec = FockBasisSpec::new(n_basis, freq.omega, params.scale)?;
    let x = build_position(&spec)?;
    let p = build_momentum(&spec)?;
    let r = dense_axpy(C64::new(0.0, params.beta), &x, &p)?.with_label("R");
    let y = dense_axpy(C64::new(0.0, params.lambda), &p, &x)?.with_label("Y");
    Ok((r, y))
}

/// `H = (L/2)(R² + Y²)` with the default [`Truncation::Projected`] policy.
pub fn build_hamiltonian(
    params: &TransformParams,
    freq: &FrequencyChoice,
    n_basis: usize,
) -> Result<OperatorMatrix> {
    build_hamiltonian_with(params, freq, n_basis, Truncation::Projected)
}

pub fn build_hamiltonian_with(
    params: &TransformParams,
    freq: &FrequencyChoice,
    n_basis: usize,
    truncation: Truncation,
) -> Result<OperatorMatrix> {
    let work = match truncation {
        Truncation::Listing => n_basis,
        Truncation::Projected => n_basis + 2,
    };
    let (r, y) = build_transformed_ops(params, freq, work)?;
    let r2 = dense_product(&r, &r)?;
    let y2 = dense_product(&y, &y)?;
    let half_l = C64::new(0.5 / params.norm_factor(), 0.0);
    let h = dense_axpy(C64::new(1.0, 0.0), &r2, &y2)?.scaled(half_l);
    Ok(h.leading_block(n_basis).with_label("H"))
}

/// `H_D + H_N` reassembled from [`CoefficientSet`] in matrix form, exact in
/// every entry of the `N×N` block.
pub fn hamiltonian_from_coefficients(coeffs: &CoefficientSet, n_basis: usize) -> OperatorMatrix {
    let lower = coeffs.lowering_coeff();
    let raise = coeffs.raising_coeff();
    OperatorMatrix::from_fn(n_basis, "H_D+H_N", |i, j| {
        let v = if i == j {
            coeffs.unperturbed_energy(i)
        } else if j == i + 2 {
            // ⟨i|a²|i+2⟩
            lower * (((i + 1) * (i + 2)) as f64).sqrt()
        } else if i == j + 2 {
            // ⟨j+2|a⁺²|j⟩
            raise * (((j + 1) * (j + 2)) as f64).sqrt()
        } else {
            0.0
        };
        C64::new(v, 0.0)
    })
}
