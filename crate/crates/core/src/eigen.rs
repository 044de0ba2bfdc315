//! Dense and tridiagonal symmetric eigenvalue routines.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Sweep cap per eigenvalue in the implicit QL iteration.
const MAX_SWEEPS: usize = 30;

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples rows `i` and `i+1`), by implicit QL
/// with Wilkinson shifts. Returned in ascending order; eigenvalues are
/// accurate to `eps ‖T‖` in absolute terms.
pub fn tridiagonal_eigenvalues<T: Real>(diag: &[T], off: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::domain("tridiagonal_eigenvalues", "off-diagonal must have n - 1 entries"));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<T> = off.iter().copied().chain(std::iter::once(T::zero())).collect();
    let two = T::lit(2.0);
    let eps = T::epsilon();
    // Off-diagonals below eps ‖T‖ are negligible in absolute terms; without
    // this floor clusters of eigenvalues at rounding level never deflate.
    let floor = eps
        * (0..n)
            .fold(T::zero(), |m, i| m.max(d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { T::zero() }));

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NonConvergence { op: "tridiagonal QL", iterations: MAX_SWEEPS });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

/// Eigenvalues of a dense symmetric matrix (row-major, `n × n`) via
/// Householder reduction to tridiagonal form followed by QL.
pub fn symmetric_eigenvalues<T: Real>(matrix: &[T], n: usize) -> Result<Vec<T>> {
    if matrix.len() != n * n {
        return Err(Error::domain("symmetric_eigenvalues", "matrix is not n × n"));
    }
    let mut a = matrix.to_vec();
    let mut diag = vec![T::zero(); n];
    let mut off = vec![T::zero(); n.saturating_sub(1)];
    let two = T::lit(2.0);
    let mut v = vec![T::zero(); n];
    let mut p = vec![T::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i * n + k] * a[i * n + k]).fold(T::zero(), |s, x| s + x).sqrt();
        if norm == T::zero() {
            off[k] = T::zero();
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = -norm.copysign(x0);
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] = v[k + 1] - alpha;
        let vnorm = (k + 1..n).map(|i| v[i] * v[i]).fold(T::zero(), |s, x| s + x).sqrt();
        if vnorm == T::zero() {
            off[k] = x0;
            continue;
        }
        for vi in &mut v[k + 1..n] {
            *vi = *vi / vnorm;
        }
        // p = A v on the trailing block, then q = p - (vᵀp) v
        for i in k + 1..n {
            let row = &a[i * n..i * n + n];
            p[i] = (k + 1..n).map(|j| row[j] * v[j]).fold(T::zero(), |s, x| s + x);
        }
        let kk = (k + 1..n).map(|i| v[i] * p[i]).fold(T::zero(), |s, x| s + x);
        for i in k + 1..n {
            p[i] = p[i] - kk * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = a[i * n + j] - two * (v[i] * p[j] + p[i] * v[j]);
            }
        }
        diag[k] = a[k * n + k];
        off[k] = alpha;
    }
    if n >= 2 {
        diag[n - 2] = a[(n - 2) * n + n - 2];
        off[n - 2] = a[(n - 1) * n + n - 2];
    }
    if n >= 1 {
        diag[n - 1] = a[(n - 1) * n + n - 1];
    }
    tridiagonal_eigenvalues(&diag, &off)
}
