//! Position-space oscillator functions and series wavefunctions.
//!
//! Only the decaying real-space functions `e^(−ωx²/2)·H_n(√ω x)` with `ω > 0`
//! are evaluated. The `x → ix` continuation, whose eigenfunctions carry
//! `e^(+x²/2)` and diverge on the real line, is deliberately not offered.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::TransformParams;
use crate::perturbation::SeriesWavefunction;

pub const DEFAULT_GRID_POINTS: usize = 2001;
/// Where the decay window of a default grid begins: `max(8, 2·x_tp)`.
pub const DEFAULT_MIN_TAIL_START: f64 = 8.0;
pub const DEFAULT_TAIL_START_TP_FACTOR: f64 = 2.0;
/// Fraction of points on each side inspected by [`decay_report`].
pub const TAIL_FRACTION: f64 = 0.1;

/// Physicists' Hermite polynomial by `H_{k+1} = 2y·H_k − 2k·H_{k−1}`.
/// Overflows for `n ≳ 150` at large `|y|`.
pub fn hermite(n: usize, y: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * y);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = 2.0 * y * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `(√ω / (√π 2ⁿ n!))^½ · H_n(√ω x) · e^(−ωx²/2)`, normalization taken in
/// log space.
pub fn basis_function(n: usize, omega: f64, x: f64) -> f64 {
    let y = omega.sqrt() * x;
    let ln_norm = 0.5 * (0.5 * omega.ln() - 0.5 * PI.ln() - n as f64 * 2f64.ln() - ln_factorial(n));
    hermite(n, y) * (ln_norm - 0.5 * y * y).exp()
}

/// Classical turning point `√((2n+1)/ω)`.
pub fn turning_point(n: usize, omega: f64) -> f64 {
    ((2 * n + 1) as f64 / omega).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealGrid {
    pub points: Vec<f64>,
    /// Trapezoid weights for `∫dx`.
    pub weights: Vec<f64>,
}

impl RealGrid {
    pub fn uniform(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) || count < 2 {
            return Err(Error::GridMismatch(format!("invalid grid [{lo}, {hi}] with {count} points")));
        }
        let h = (hi - lo) / (count - 1) as f64;
        let points: Vec<f64> = (0..count)
            .map(|i| if i == count - 1 { hi } else { lo + h * i as f64 })
            .collect();
        let mut weights = vec![h; count];
        weights[0] = h / 2.0;
        weights[count - 1] = h / 2.0;
        Ok(Self { points, weights })
    }

    /// 2001 points on `[−L, L]`, sized so that the outer 10% inspected by
    /// [`decay_report`] starts at `max(8, 2·√((2n_top+1)/ω))`, i.e.
    /// `L = max(10, 2.5·x_tp)`. At `1.5·x_tp` the `|f| = 1` series still
    /// carries ~1e−6 there.
    pub fn default_for(n_top: usize, omega: f64) -> Self {
        let tail_start =
            DEFAULT_MIN_TAIL_START.max(DEFAULT_TAIL_START_TP_FACTOR * turning_point(n_top, omega));
        // the outer TAIL_FRACTION of points spans 2·TAIL_FRACTION of the half-width
        let half = tail_start / (1.0 - 2.0 * TAIL_FRACTION);
        Self::uniform(-half, half, DEFAULT_GRID_POINTS).expect("default grid is valid")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.points[1] - self.points[0]
    }

    /// `min(|x_0|, |x_last|)`.
    pub fn reach(&self) -> f64 {
        self.points[0].abs().min(self.points[self.len() - 1].abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    Basis,
    Series,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedWavefunction {
    pub grid: RealGrid,
    pub values: Vec<f64>,
    pub n: usize,
    /// Highest Fock index contributing.
    pub n_top: usize,
    pub omega: f64,
    pub kind: WaveKind,
}

pub fn evaluate_basis(n: usize, omega: f64, grid: &RealGrid) -> EvaluatedWavefunction {
    EvaluatedWavefunction {
        grid: grid.clone(),
        values: grid.points.iter().map(|&x| basis_function(n, omega, x)).collect(),
        n,
        n_top: n,
        omega,
        kind: WaveKind::Basis,
    }
}

/// `Σ_k c_k ψ_{n±2k}(x)` at the series' real-space frequency.
pub fn evaluate_series(series: &SeriesWavefunction, grid: &RealGrid) -> EvaluatedWavefunction {
    let mut values = vec![0.0; grid.len()];
    for (k, &c) in series.coeffs.iter().enumerate() {
        let m = series.fock_index(k);
        for (v, &x) in values.iter_mut().zip(&grid.points) {
            *v += c * basis_function(m, series.omega, x);
        }
    }
    EvaluatedWavefunction {
        grid: grid.clone(),
        values,
        n: series.n,
        n_top: series.top_index(),
        omega: series.omega,
        kind: WaveKind::Series,
    }
}

/// `Σ_i w_i f(x_i) g(x_i)`.
pub fn quadrature_overlap(f: &EvaluatedWavefunction, g: &EvaluatedWavefunction) -> Result<f64> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch("overlap operands live on different grids".into()));
    }
    Ok(f.grid.weights.iter().zip(&f.values).zip(&g.values).map(|((w, a), b)| w * a * b).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub max_tail: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Largest `|f|` over the outer 10% of points on each side. The grid must
/// reach past the turning point of the highest occupied state.
pub fn decay_report(f: &EvaluatedWavefunction, threshold: f64) -> Result<DecayReport> {
    let tp = turning_point(f.n_top, f.omega);
    let reach = f.grid.reach();
    if reach <= tp {
        return Err(Error::GridTooNarrow { half_width: reach, turning_point: tp });
    }
    let len = f.values.len();
    let tail = ((len as f64 * TAIL_FRACTION) as usize).max(1);
    let max_tail = f.values[..tail]
        .iter()
        .chain(&f.values[len - tail..])
        .fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(DecayReport { max_tail, threshold, pass: max_tail <= threshold })
}

/// `HΦ` in position space by central differences:
/// `[−(1−λ²)Φ'' + (1−β²)x²Φ + (λ+β)(2xΦ' + Φ)] / (2(1+λβ))`. The basis
/// scale `s` does not appear; position space is the physical frame.
pub fn apply_hamiltonian(params: &TransformParams, f: &EvaluatedWavefunction) -> EvaluatedWavefunction {
    let (lam, beta) = (params.lambda, params.beta);
    let h = f.grid.spacing();
    let v = &f.values;
    let n = v.len();
    let at = |i: isize| if i < 0 || i >= n as isize { 0.0 } else { v[i as usize] };
    let denom = 2.0 * params.norm_factor();
    let values = (0..n as isize)
        .map(|i| {
            let x = f.grid.points[i as usize];
            let d1 = (at(i + 1) - at(i - 1)) / (2.0 * h);
            let d2 = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h * h);
            (-(1.0 - lam * lam) * d2
                + (1.0 - beta * beta) * x * x * at(i)
                + (lam + beta) * (2.0 * x * d1 + at(i)))
                / denom
        })
        .collect();
    EvaluatedWavefunction { values, ..f.clone() }
}
