//! Truncated Fock-basis operator algebra.
//!
//! Operators are dense, row-major complex matrices over the retained number
//! states `|0⟩ … |N−1⟩`. Products of truncated ladder matrices are exact away
//! from the last row and column; identities that involve `a a⁺` fail only at
//! the `(N−1, N−1)` corner.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::C64;

/// Width of the trailing band excluded from identity checks on truncated
/// products (one ladder step for `[a, a⁺]`, two for products of two ladders).
pub const TRUNCATION_BAND: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockBasisSpec {
    pub n_basis: usize,
    pub omega: f64,
    pub scale: f64,
}

impl FockBasisSpec {
    pub fn new(n_basis: usize, omega: f64, scale: f64) -> Result<Self> {
        let spec = Self { n_basis, omega, scale };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_basis < 2 {
            return Err(Error::InvalidBasis(format!(
                "n_basis = {} (need at least 2)",
                self.n_basis
            )));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidBasis(format!("omega = {} must be positive", self.omega)));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidBasis(format!("scale = {} must be positive", self.scale)));
        }
        Ok(())
    }
}

/// Dense square complex matrix with a provenance label.
#[derive(Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<C64>,
    pub label: String,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize, label: impl Into<String>) -> Self {
        Self { dim, entries: vec![C64::new(0.0, 0.0); dim * dim], label: label.into() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, "I");
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, label: impl Into<String>, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries, label: label.into() }
    }

    /// Builds from row-major entries. Fails unless `entries.len() == dim²`
    /// and every entry is finite.
    pub fn from_row_major(dim: usize, entries: Vec<C64>, label: impl Into<String>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::NotSquare { rows: dim, cols: entries.len() / dim.max(1) });
        }
        let m = Self { dim, entries, label: label.into() };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_real_rows(rows: &[Vec<f64>], label: impl Into<String>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::NotSquare { rows: dim, cols: bad.len() });
        }
        let entries = rows.iter().flatten().map(|&v| C64::new(v, 0.0)).collect();
        Self::from_row_major(dim, entries, label)
    }

    pub fn from_diagonal(diag: &[C64], label: impl Into<String>) -> Self {
        let mut m = Self::zeros(diag.len(), label);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.entries.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            Some(k) => Err(Error::NonFinite { row: k / self.dim, col: k % self.dim }),
            None => Ok(()),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, format!("{}^+", self.label), |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, format!("{}^T", self.label), |i, j| self[(j, i)])
    }

    pub fn scaled(&self, alpha: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| alpha * z).collect(),
            label: self.label.clone(),
        }
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Leading `k×k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        let k = k.min(self.dim);
        Self::from_fn(k, self.label.clone(), |i, j| self[(i, j)])
    }

    /// Largest entry modulus on the strictly upper triangle.
    pub fn max_abs_strict_upper(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                m = m.max(self[(i, j)].norm());
            }
        }
        m
    }

    /// Largest entry modulus on the strictly lower triangle.
    pub fn max_abs_strict_lower(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.dim {
            for j in 0..i {
                m = m.max(self[(i, j)].norm());
            }
        }
        m
    }

    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// Largest entrywise difference `|A_ij − B_ij|` over the leading `k×k` block.
    pub fn max_abs_diff_block(&self, other: &Self, k: usize) -> Result<f64> {
        ensure_same_dim(self, other)?;
        let k = k.min(self.dim);
        let mut m = 0.0f64;
        for i in 0..k {
            for j in 0..k {
                m = m.max((self[(i, j)] - other[(i, j)]).norm());
            }
        }
        Ok(m)
    }
}

impl Index<(usize, usize)> for OperatorMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for OperatorMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OperatorMatrix '{}' ({}x{})", self.label, self.dim, self.dim)?;
        for i in 0..self.dim.min(8) {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .take(8)
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}{}]", row.join(", "), if self.dim > 8 { ", …" } else { "" })?;
        }
        if self.dim > 8 {
            writeln!(f, "  …")?;
        }
        Ok(())
    }
}

fn ensure_same_dim(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { left: a.dim, right: b.dim });
    }
    Ok(())
}

/// Annihilation and creation matrices `(a, a⁺)`; `a` carries `√1 … √(N−1)` on
/// its first superdiagonal.
pub fn build_ladder(spec: &FockBasisSpec) -> Result<(OperatorMatrix, OperatorMatrix)> {
    spec.validate()?;
    let n = spec.n_basis;
    let mut a = OperatorMatrix::zeros(n, "a");
    for k in 1..n {
        a[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    let ad = a.adjoint().with_label("a+");
    Ok((a, ad))
}

/// `x = s (a + a⁺) / √(2ω)`.
pub fn build_position(spec: &FockBasisSpec) -> Result<OperatorMatrix> {
    let (a, ad) = build_ladder(spec)?;
    let c = spec.scale / (2.0 * spec.omega).sqrt();
    Ok(dense_axpy(C64::new(1.0, 0.0), &a, &ad)?.scaled(C64::new(c, 0.0)).with_label("x"))
}

/// `p = i √(ω/2) (a⁺ − a) / s`.
pub fn build_momentum(spec: &FockBasisSpec) -> Result<OperatorMatrix> {
    let (a, ad) = build_ladder(spec)?;
    let c = (spec.omega / 2.0).sqrt() / spec.scale;
    Ok(dense_axpy(C64::new(-1.0, 0.0), &a, &ad)?.scaled(C64::new(0.0, c)).with_label("p"))
}

pub fn dense_product(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    ensure_same_dim(a, b)?;
    let n = a.dim;
    let mut out = OperatorMatrix::zeros(n, format!("{}{}", a.label, b.label));
    for i in 0..n {
        let out_row = &mut out.entries[i * n..(i + 1) * n];
        for (k, &aik) in a.row(i).iter().enumerate() {
            if aik == C64::new(0.0, 0.0) {
                continue;
            }
            for (o, &bkj) in out_row.iter_mut().zip(b.row(k)) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// `alpha·A + B`.
pub fn dense_axpy(alpha: C64, a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    ensure_same_dim(a, b)?;
    Ok(OperatorMatrix {
        dim: a.dim,
        entries: a.entries.iter().zip(&b.entries).map(|(&x, &y)| alpha * x + y).collect(),
        label: b.label.clone(),
    })
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    let ab = dense_product(a, b)?;
    let ba = dense_product(b, a)?;
    Ok(dense_axpy(C64::new(-1.0, 0.0), &ba, &ab)?.with_label(format!("[{},{}]", a.label, b.label)))
}
