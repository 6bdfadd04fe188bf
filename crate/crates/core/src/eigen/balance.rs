//! Geometric diagonal similarity `D⁻¹HD`, `D = diag(rᵏ)`.
//!
//! Away from the frequencies that make it triangular, the oscillator matrix
//! couples `|n⟩` to `|n±2⟩` with amplitudes in the fixed ratio `|V/U|`, and
//! that imbalance makes the low eigenvalues of the raw matrix exponentially
//! ill-conditioned in the basis size. Choosing `r` so that mirrored entries
//! `h_ij`, `h_ji` get equal modulus removes the growth.

use crate::fock::OperatorMatrix;

/// Largest factor by which any entry may be rescaled.
const MAX_ENTRY_SCALING: f64 = 1e4;

/// Least-squares `ln r` over mirrored pairs that are both above rounding
/// level, or `0.0` when there is nothing to balance or the scaling would
/// rescale some entry by more than `MAX_ENTRY_SCALING`.
pub(crate) fn band_ratio_log(h: &OperatorMatrix) -> f64 {
    let n = h.dim();
    let thresh = f64::EPSILON.sqrt() * h.frobenius_norm();
    let (mut num, mut den) = (0.0, 0.0);
    let mut max_offset = 0usize;
    for i in 0..n {
        for j in 0..n {
            if h[(i, j)].norm() > 0.0 {
                max_offset = max_offset.max(i.abs_diff(j));
            }
            if j <= i {
                continue;
            }
            let (up, low) = (h[(i, j)].norm(), h[(j, i)].norm());
            if up > thresh && low > thresh {
                let d = (j - i) as f64;
                num += 2.0 * d * (low / up).ln();
                den += 4.0 * d * d;
            }
        }
    }
    if den == 0.0 {
        return 0.0;
    }
    let ln_r = num / den;
    if ln_r.abs() < 1e-12 || ln_r.abs() * max_offset as f64 > MAX_ENTRY_SCALING.ln() {
        return 0.0;
    }
    ln_r
}

/// `h_ij ← h_ij·r^(j−i)`.
pub(crate) fn apply(h: &OperatorMatrix, ln_r: f64) -> OperatorMatrix {
    OperatorMatrix::from_fn(h.dim(), h.label.clone(), |i, j| {
        h[(i, j)] * (ln_r * (j as f64 - i as f64)).exp()
    })
}
