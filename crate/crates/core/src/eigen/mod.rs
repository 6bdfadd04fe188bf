//! Dense eigenvalues of general complex matrices.
//!
//! Pipeline of [`qr_eigenvalues`]: optional geometric balancing, orientation
//! (a matrix with less mass above its first superdiagonal than below its
//! first subdiagonal is transposed, so lower-triangular input is already
//! Hessenberg), Householder reduction, then single-shift Wilkinson QR with
//! deflation. [`certify`] fills residuals by inverse iteration against the
//! original matrix.

mod balance;
mod hessenberg;
mod inverse;
mod qr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::OperatorMatrix;
use crate::C64;

pub use hessenberg::{hessenberg_reduce, hessenberg_with_transform};
pub use inverse::{eigenvector_inverse_iteration, InverseIterate, InverseIterator};

/// Residual threshold for trusting an eigenvalue, relative to `‖H‖_F`.
pub const RESIDUAL_TRUST_REL: f64 = 1e-8;

/// Entrywise band tolerance, relative to `‖H‖_F`, under which an ω₁/ω₂
/// Hamiltonian counts as triangular. Its zero triangle only carries
/// rounding from the `U`/`V` cancellation.
pub const TRIANGULAR_BAND_TOL_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Qr,
    TriangularFastPath,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Qr => "qr",
            SolveMethod::TriangularFastPath => "triangular_fast_path",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    /// Sorted by ascending `|Re|`, ties by ascending `Im`.
    pub eigenvalues: Vec<C64>,
    pub n_basis: usize,
    pub trusted_count: usize,
    pub iterations: usize,
    pub method: SolveMethod,
    /// Inverse-iteration residuals `‖Hv − λv‖` for a leading prefix of
    /// `eigenvalues`, when certified.
    pub residuals: Option<Vec<f64>>,
}

impl SpectralReport {
    fn new(mut eigenvalues: Vec<C64>, iterations: usize, method: SolveMethod) -> Self {
        sort_spectrum(&mut eigenvalues);
        let n = eigenvalues.len();
        Self {
            eigenvalues,
            n_basis: n,
            trusted_count: trusted_limit(n),
            iterations,
            method,
            residuals: None,
        }
    }

    pub fn trace(&self) -> C64 {
        self.eigenvalues.iter().sum()
    }

    pub fn is_trusted(&self, index: usize) -> bool {
        index < self.trusted_count
    }
}

/// `⌈N/2⌉`: the truncated ladder algebra corrupts the upper half of the
/// spectrum, so at most this many leading eigenvalues are ever trusted.
pub fn trusted_limit(n: usize) -> usize {
    n.div_ceil(2)
}

/// Ascending `|Re|`, ties by ascending `Im`. Neighbours that are complex
/// conjugates up to rounding count as ties, so a pair whose real parts differ
/// in the last bits still comes out negative-`Im` first.
pub fn sort_spectrum(values: &mut [C64]) {
    values.sort_by(|a, b| a.re.abs().total_cmp(&b.re.abs()).then(a.im.total_cmp(&b.im)));
    for i in 1..values.len() {
        let (a, b) = (values[i - 1], values[i]);
        if a.im > b.im && (a - b.conj()).norm() <= CONJUGATE_TOL * a.norm().max(1.0) {
            values.swap(i - 1, i);
        }
    }
}

const CONJUGATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QrOptions {
    pub max_sweeps_per_eig: usize,
    /// Apply the geometric diagonal similarity before reduction.
    pub balance: bool,
}

impl Default for QrOptions {
    fn default() -> Self {
        Self { max_sweeps_per_eig: 30, balance: true }
    }
}

/// All eigenvalues via shifted QR. `trusted_count` is set to `⌈N/2⌉` and
/// lowered by [`certify`].
pub fn qr_eigenvalues(h: &OperatorMatrix, options: &QrOptions) -> Result<SpectralReport> {
    h.check_finite()?;
    let mut work = if options.balance {
        let ln_r = balance::band_ratio_log(h);
        if ln_r != 0.0 {
            balance::apply(h, ln_r)
        } else {
            h.clone()
        }
    } else {
        h.clone()
    };
    if outside_hessenberg_mass(&work.transpose()) < outside_hessenberg_mass(&work) {
        work = work.transpose();
    }
    let hess = hessenberg_reduce(&work);
    let (values, sweeps) = qr::hessenberg_eigenvalues(hess, options.max_sweeps_per_eig)?;
    Ok(SpectralReport::new(values, sweeps, SolveMethod::Qr))
}

/// `Σ |h_ij|²` over `i > j + 1`.
fn outside_hessenberg_mass(h: &OperatorMatrix) -> f64 {
    let n = h.dim();
    let mut s = 0.0;
    for i in 2..n {
        for j in 0..i - 1 {
            s += h[(i, j)].norm_sqr();
        }
    }
    s
}

/// Reads the spectrum off the diagonal when one strict triangle is below
/// `band_tol` entrywise.
pub fn triangular_fast_path(h: &OperatorMatrix, band_tol: f64) -> Option<SpectralReport> {
    if h.max_abs_strict_upper() <= band_tol || h.max_abs_strict_lower() <= band_tol {
        Some(SpectralReport::new(h.diagonal(), 0, SolveMethod::TriangularFastPath))
    } else {
        None
    }
}

/// Computes inverse-iteration residuals for the first `prefix` eigenvalues
/// (clamped to `⌈N/2⌉`) and sets `trusted_count` to the length of the
/// leading run with residual `≤ 1e−8·‖H‖_F`.
pub fn certify(h: &OperatorMatrix, report: &mut SpectralReport, prefix: usize) -> Result<()> {
    if h.dim() != report.eigenvalues.len() {
        return Err(Error::DimensionMismatch { left: h.dim(), right: report.eigenvalues.len() });
    }
    let limit = trusted_limit(h.dim());
    let count = prefix.min(limit);
    let solver = InverseIterator::new(h)?;
    let tol = RESIDUAL_TRUST_REL * h.frobenius_norm();
    let mut residuals = Vec::with_capacity(count);
    for &mu in &report.eigenvalues[..count] {
        residuals.push(solver.solve(mu)?.residual);
    }
    report.trusted_count = residuals.iter().take_while(|&&r| r <= tol).count();
    report.residuals = Some(residuals);
    Ok(())
}
