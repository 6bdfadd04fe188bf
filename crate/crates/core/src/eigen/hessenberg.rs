use crate::fock::OperatorMatrix;
use crate::C64;

/// Householder reduction to upper-Hessenberg form.
///
/// Columns whose below-subdiagonal part is already at rounding level
/// (`≤ ε‖H‖_F`) are cleared instead of reflected, so Hessenberg and
/// triangular inputs pass through unchanged.
pub fn hessenberg_reduce(h: &OperatorMatrix) -> OperatorMatrix {
    reduce(h, false).0
}

/// Returns `(Hh, Q)` with `H = Q·Hh·Q⁺` and `Q` unitary.
pub fn hessenberg_with_transform(h: &OperatorMatrix) -> (OperatorMatrix, OperatorMatrix) {
    let (hh, q) = reduce(h, true);
    (hh, q.expect("accumulated transform"))
}

fn reduce(h: &OperatorMatrix, accumulate: bool) -> (OperatorMatrix, Option<OperatorMatrix>) {
    let n = h.dim();
    let mut m = h.clone().with_label(format!("hess({})", h.label));
    let mut q = accumulate.then(|| OperatorMatrix::identity(n));
    let tol = f64::EPSILON * h.frobenius_norm();
    let zero = C64::new(0.0, 0.0);
    let mut v = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let tail: f64 = (k + 2..n).map(|i| m[(i, k)].norm_sqr()).sum();
        if tail.sqrt() <= tol {
            for i in k + 2..n {
                m[(i, k)] = zero;
            }
            continue;
        }
        let x0 = m[(k + 1, k)];
        let xnorm = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;

        let len = n - k - 1;
        v[0] = x0 - alpha;
        for i in 1..len {
            v[i] = m[(k + 1 + i, k)];
        }
        let vnorm2: f64 = v[..len].iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;

        // left: rows k+1.., columns k+1.. (column k is set explicitly)
        for j in k + 1..n {
            let mut s = zero;
            for i in 0..len {
                s += v[i].conj() * m[(k + 1 + i, j)];
            }
            s *= tau;
            for i in 0..len {
                let vi = v[i];
                m[(k + 1 + i, j)] -= vi * s;
            }
        }
        m[(k + 1, k)] = alpha;
        for i in k + 2..n {
            m[(i, k)] = zero;
        }
        // right: all rows, columns k+1..
        apply_right(&mut m, &v[..len], k + 1, tau);
        if let Some(q) = q.as_mut() {
            apply_right(q, &v[..len], k + 1, tau);
        }
    }
    (m, q)
}

/// `M ← M (I − τ v v⁺)` on columns `offset..`.
fn apply_right(m: &mut OperatorMatrix, v: &[C64], offset: usize, tau: f64) {
    let n = m.dim();
    for i in 0..n {
        let mut s = C64::new(0.0, 0.0);
        for (j, vj) in v.iter().enumerate() {
            s += m[(i, offset + j)] * vj;
        }
        s *= tau;
        for (j, vj) in v.iter().enumerate() {
            m[(i, offset + j)] -= s * vj.conj();
        }
    }
}
