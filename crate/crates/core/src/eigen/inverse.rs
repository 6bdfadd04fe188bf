use crate::eigen::hessenberg::hessenberg_with_transform;
use crate::error::{Error, Result};
use crate::fock::OperatorMatrix;
use crate::C64;

const MAX_ITERATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct InverseIterate {
    /// Unit-norm approximate eigenvector.
    pub vector: Vec<C64>,
    /// `‖Hv − μv‖₂` for the requested shift `μ`.
    pub residual: f64,
    /// `v⁺Hv`.
    pub rayleigh: C64,
}

/// Inverse iteration against a fixed matrix. The matrix is reduced to
/// Hessenberg form once so every shift costs `O(N²)`; residuals are always
/// measured against the original matrix.
pub struct InverseIterator {
    h: OperatorMatrix,
    hess: OperatorMatrix,
    q: OperatorMatrix,
    norm: f64,
}

impl InverseIterator {
    pub fn new(h: &OperatorMatrix) -> Result<Self> {
        h.check_finite()?;
        let (hess, q) = hessenberg_with_transform(h);
        Ok(Self { h: h.clone(), hess, q, norm: h.frobenius_norm() })
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.h
    }

    /// Runs inverse iteration from shift `mu`. If the iterate goes
    /// non-finite, a single retry with a perturbed shift is made before
    /// giving up with `SingularShift`.
    pub fn solve(&self, mu: C64) -> Result<InverseIterate> {
        if let Some(it) = self.iterate(mu, mu) {
            return Ok(it);
        }
        let bump = f64::EPSILON.sqrt() * self.norm.max(1.0);
        self.iterate(mu + C64::new(bump, bump), mu)
            .ok_or(Error::SingularShift { re: mu.re, im: mu.im })
    }

    fn iterate(&self, shift: C64, mu: C64) -> Option<InverseIterate> {
        let n = self.h.dim();
        let lu = HessenbergLu::factor(&self.hess, shift, f64::EPSILON * self.norm.max(f64::MIN_POSITIVE));
        let mut w = vec![C64::new(1.0 / (n as f64).sqrt(), 0.0); n];
        let mut best: Option<InverseIterate> = None;
        let stop = f64::EPSILON * self.norm * n as f64;

        let mut prev: Option<Vec<C64>> = None;
        for _ in 0..MAX_ITERATIONS {
            lu.solve_in_place(&mut w);
            let wn = norm2(&w);
            if !wn.is_finite() || wn == 0.0 {
                return best;
            }
            w.iter_mut().for_each(|z| *z /= wn);
            let v = self.q.matvec(&w).ok()?;
            let hv = self.h.matvec(&v).ok()?;
            let residual = hv.iter().zip(&v).map(|(a, b)| (a - mu * b).norm_sqr()).sum::<f64>().sqrt();
            let rayleigh: C64 = v.iter().zip(&hv).map(|(a, b)| a.conj() * b).sum();
            let converged = prev
                .as_ref()
                .map(|p| (1.0 - dot(p, &v).norm()).abs() < 1e-14)
                .unwrap_or(false);
            prev = Some(v.clone());
            if best.as_ref().is_none_or(|b| residual < b.residual) {
                best = Some(InverseIterate { vector: v, residual, rayleigh });
            }
            if residual <= stop || converged {
                break;
            }
        }
        best
    }
}

/// One-off inverse iteration `(H − μI)⁻¹` from shift `mu`.
pub fn eigenvector_inverse_iteration(h: &OperatorMatrix, mu: C64) -> Result<InverseIterate> {
    InverseIterator::new(h)?.solve(mu)
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// LU with adjacent-row pivoting of `Hh − σI` for upper-Hessenberg `Hh`.
struct HessenbergLu {
    n: usize,
    u: Vec<C64>,
    swaps: Vec<bool>,
    mult: Vec<C64>,
}

impl HessenbergLu {
    fn factor(hess: &OperatorMatrix, shift: C64, tiny: f64) -> Self {
        let n = hess.dim();
        let mut u: Vec<C64> = hess.entries().to_vec();
        for i in 0..n {
            u[i * n + i] -= shift;
        }
        let mut swaps = vec![false; n.saturating_sub(1)];
        let mut mult = vec![C64::new(0.0, 0.0); n.saturating_sub(1)];
        for k in 0..n.saturating_sub(1) {
            let (top, below) = (u[k * n + k], u[(k + 1) * n + k]);
            if below.norm() > top.norm() {
                for j in k..n {
                    u.swap(k * n + j, (k + 1) * n + j);
                }
                swaps[k] = true;
            }
            if u[k * n + k].norm() <= tiny {
                u[k * n + k] = C64::new(tiny, 0.0);
            }
            let l = u[(k + 1) * n + k] / u[k * n + k];
            mult[k] = l;
            u[(k + 1) * n + k] = C64::new(0.0, 0.0);
            for j in k + 1..n {
                let ukj = u[k * n + j];
                u[(k + 1) * n + j] -= l * ukj;
            }
        }
        if n > 0 && u[(n - 1) * n + n - 1].norm() <= tiny {
            u[(n - 1) * n + n - 1] = C64::new(tiny, 0.0);
        }
        Self { n, u, swaps, mult }
    }

    fn solve_in_place(&self, b: &mut [C64]) {
        let n = self.n;
        for k in 0..n.saturating_sub(1) {
            if self.swaps[k] {
                b.swap(k, k + 1);
            }
            let bk = b[k];
            b[k + 1] -= self.mult[k] * bk;
        }
        for i in (0..n).rev() {
            let tail: C64 = self.u[i * n + i + 1..(i + 1) * n].iter().zip(&b[i + 1..]).map(|(u, x)| u * x).sum();
            b[i] = (b[i] - tail) / self.u[i * n + i];
        }
    }
}
