//! Single-shift complex QR on an upper-Hessenberg matrix, eigenvalues only.

use crate::error::{Error, Result};
use crate::fock::OperatorMatrix;
use crate::C64;

/// Eigenvalues of the Hessenberg matrix `h` (destroyed) and the number of
/// QR sweeps spent. Only the active unreduced window is updated; the rest of
/// the Schur form is never needed.
pub(crate) fn hessenberg_eigenvalues(
    mut h: OperatorMatrix,
    max_sweeps_per_eig: usize,
) -> Result<(Vec<C64>, usize)> {
    let n = h.dim();
    let mut eig = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok((eig, 0));
    }
    let budget = max_sweeps_per_eig.saturating_mul(n);
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    let mut rotations: Vec<(f64, C64)> = Vec::with_capacity(n);

    loop {
        let lo = find_split(&mut h, hi);
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            its = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if total >= budget {
            return Err(Error::Convergence { index: hi, sweeps: total });
        }
        its += 1;
        total += 1;
        let shift = if its.is_multiple_of(10) {
            // exceptional shift to break cycles
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_sweep(&mut h, lo, hi, shift, &mut rotations);
    }
    Ok((eig, total))
}

/// Lowest index `lo` such that `h[lo..=hi]` is unreduced; negligible
/// subdiagonals are set to zero.
fn find_split(h: &mut OperatorMatrix, hi: usize) -> usize {
    for k in (1..=hi).rev() {
        let sub = h[(k, k - 1)].norm();
        let mut s = h[(k - 1, k - 1)].norm() + h[(k, k)].norm();
        if s == 0.0 {
            s = (0..=hi).map(|i| h[(i, i)].norm() + h[(i, i.saturating_sub(1))].norm()).sum();
        }
        if sub <= f64::EPSILON * s {
            h[(k, k - 1)] = C64::new(0.0, 0.0);
            return k;
        }
    }
    0
}

/// Eigenvalue of the trailing 2×2 block closer to its last diagonal entry.
fn wilkinson_shift(h: &OperatorMatrix, hi: usize) -> C64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (l1, l2) = (mid + disc, mid - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Rotation `G = [[c, s], [−s̄, c]]` with `G·[a, b]ᵀ = [r, 0]ᵀ`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    if b.norm() == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    let r = an.hypot(b.norm());
    (an / r, (a / an) * b.conj() / r)
}

/// Explicit shifted step `H − σI = QR`, `H ← RQ + σI` on `lo..=hi`.
fn qr_sweep(h: &mut OperatorMatrix, lo: usize, hi: usize, shift: C64, rot: &mut Vec<(f64, C64)>) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    rot.clear();
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let t1 = h[(k, j)];
            let t2 = h[(k + 1, j)];
            h[(k, j)] = t1 * c + s * t2;
            h[(k + 1, j)] = -s.conj() * t1 + t2 * c;
        }
        h[(k + 1, k)] = C64::new(0.0, 0.0);
        rot.push((c, s));
    }
    for (idx, &(c, s)) in rot.iter().enumerate() {
        let k = lo + idx;
        for i in lo..=(k + 1).min(hi) {
            let t1 = h[(i, k)];
            let t2 = h[(i, k + 1)];
            h[(i, k)] = t1 * c + s.conj() * t2;
            h[(i, k + 1)] = -s * t1 + t2 * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}
