//! Operator norm of a Nyström matrix between weighted `ℓ^p` spaces.
//!
//! With `D = diag(ω_i^{1/p})` for the measure weights `ω`, the weighted norm
//! of `A` equals the plain `ℓ^p` norm of `B = D A D^{-1}`. The power method
//! on `B` alternates the duality maps of `ℓ^p` and `ℓ^q`; each iterate is a
//! feasible vector, so every quotient is a lower bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::operator::DiscretizedOperator;
use crate::scalar::Real;

/// Iteration cap per start.
pub const MAX_ITERATIONS: usize = 10_000;
/// Relative change of the quotient treated as stagnation.
pub const STAGNATION: f64 = 1e-10;
/// Random starts in addition to the constant vector.
pub const RESTARTS: usize = 5;
/// Seed of the restart generator.
pub const DEFAULT_SEED: u64 = 0x5eed_0ff5;

/// Settings of [`lp_opnorm_numeric_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerMethod {
    pub restarts: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for PowerMethod {
    fn default() -> Self {
        Self { restarts: RESTARTS, max_iterations: MAX_ITERATIONS, seed: DEFAULT_SEED }
    }
}

/// `B = D A D^{-1}` in row-major order.
pub fn symmetrized_matrix<T: Real>(disc: &DiscretizedOperator<T>) -> Vec<T> {
    let n = disc.order();
    let inv_p = disc.p.p().recip();
    let d: Vec<T> = disc.measure_weights.iter().map(|&w| w.powf(inv_p)).collect();
    let mut b = disc.matrix.clone();
    for i in 0..n {
        for j in 0..n {
            b[i * n + j] = d[i] * b[i * n + j] / d[j];
        }
    }
    b
}

fn norm<T: Real>(x: &[T], p: T) -> T {
    let scale = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if scale == T::zero() {
        return T::zero();
    }
    let sum = x.iter().fold(T::zero(), |acc, &v| acc + (v.abs() / scale).powf(p));
    scale * sum.powf(p.recip())
}

/// Duality map: the unit vector in `ℓ^{r'}` attaining `⟨y, x⟩ = ‖x‖_r`.
fn dual<T: Real>(x: &[T], r: T) -> Vec<T> {
    let nx = norm(x, r);
    x.iter().map(|&v| v.signum() * (v.abs() / nx).powf(r - T::one())).collect()
}

fn mat_vec<T: Real>(b: &[T], x: &[T]) -> Vec<T> {
    b.chunks(x.len()).map(|row| row.iter().zip(x).fold(T::zero(), |acc, (&a, &v)| acc + a * v)).collect()
}

fn mat_t_vec<T: Real>(b: &[T], y: &[T]) -> Vec<T> {
    let n = y.len();
    let mut out = vec![T::zero(); n];
    for (row, &yi) in b.chunks(n).zip(y) {
        for (o, &a) in out.iter_mut().zip(row) {
            *o = *o + a * yi;
        }
    }
    out
}

fn power_run<T: Real>(b: &[T], start: Vec<T>, p: T, q: T, cap: usize) -> Result<T> {
    let mut x = start;
    let nx = norm(&x, p);
    x.iter_mut().for_each(|v| *v = *v / nx);
    let mut est = T::zero();
    for _ in 0..cap {
        let y = mat_vec(b, &x);
        let next = norm(&y, p);
        let z = mat_t_vec(b, &dual(&y, p));
        let zx = z.iter().zip(&x).fold(T::zero(), |acc, (&a, &c)| acc + a * c);
        let stalled = (next - est).abs() <= T::lit(STAGNATION) * next;
        est = est.max(next);
        if stalled || norm(&z, q) <= zx {
            return Ok(est);
        }
        x = dual(&z, q);
    }
    Err(Error::NonConvergence { op: "lp_opnorm_numeric", iterations: cap })
}

/// Lower bound on `‖F_σ‖_{L^p_μ}` from the Nyström matrix, `1 < p < ∞`.
pub fn lp_opnorm_numeric<T: Real>(disc: &DiscretizedOperator<T>) -> Result<T> {
    lp_opnorm_numeric_with(disc, PowerMethod::default())
}

pub fn lp_opnorm_numeric_with<T: Real>(disc: &DiscretizedOperator<T>, cfg: PowerMethod) -> Result<T> {
    let p = disc.p.p();
    if !(p > T::one()) {
        return Err(Error::domain("lp_opnorm_numeric", format!("p = {p} must exceed 1")));
    }
    let q = disc.p.q();
    let n = disc.order();
    let b = symmetrized_matrix(disc);
    let mut best = power_run(&b, vec![T::one(); n], p, q, cfg.max_iterations)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.restarts {
        let start: Vec<T> = (0..n).map(|_| T::lit(rng.gen_range(0.05..1.0))).collect();
        best = best.max(power_run(&b, start, p, q, cfg.max_iterations)?);
    }
    Ok(best)
}

/// `‖B‖₂ = sqrt(λ_max(BᵀB))`, the `p = 2` route.
pub fn l2_opnorm_singular<T: Real>(disc: &DiscretizedOperator<T>) -> Result<T> {
    if disc.p.p() != T::lit(2.0) {
        return Err(Error::domain("l2_opnorm_singular", "requires p = 2"));
    }
    let n = disc.order();
    let b = symmetrized_matrix(disc);
    let mut gram = vec![T::zero(); n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = T::zero();
            for k in 0..n {
                acc = acc + b[k * n + i] * b[k * n + j];
            }
            gram[i * n + j] = acc;
            gram[j * n + i] = acc;
        }
    }
    let eig = symmetric_eigenvalues(&gram, n)?;
    Ok(eig.last().copied().unwrap_or(T::zero()).max(T::zero()).sqrt())
}
