//! Gauss hypergeometric function `₂F₁(a, b; c; z)` on `z ∈ [0, 1]`.
//!
//! Evaluation regimes:
//!
//! * `z <= 0.7`: the defining power series.
//! * `0.7 < z <= 0.9`: the power series, after the Euler transform
//!   `₂F₁(a,b;c;z) = (1-z)^{c-a-b} ₂F₁(c-a,c-b;c;z)` whenever `c-a-b < 0`.
//! * `z > 0.9`: the `z -> 1-z` connection formulas, with the logarithmic
//!   variants when `c-a-b` is an integer. The complement `1 - z` can be
//!   passed in directly through [`hyp2f1_complement`] so that arguments
//!   like `1 - 2^-40` keep full relative precision.
//!
//! Terminating series (a or b a non-positive integer) are summed exactly
//! for any `z`.

use crate::error::{Error, Result};
use crate::scalar::{is_nonpositive_integer, Real};

use super::gamma::{digamma, gamma_ratio};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 100_000;
/// A series stops after this many consecutive negligible terms.
const SMALL_RUN: usize = 3;
const RAW_SERIES_MAX_Z: f64 = 0.7;
const SERIES_MAX_Z: f64 = 0.9;
/// `c - a - b` closer than this to an integer uses the logarithmic formulas.
const INTEGER_TOL: f64 = 1e-9;

/// Parameters of a Gauss hypergeometric evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypArgs<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub z: T,
}

impl<T: Real> HypArgs<T> {
    /// Validates `c ∉ {0, -1, -2, ...}` and `z ∈ [0, 1]`.
    pub fn new(a: T, b: T, c: T, z: T) -> Result<Self> {
        if is_nonpositive_integer(c) {
            return Err(Error::domain("hyp2f1", format!("c = {c} is a non-positive integer")));
        }
        if !(z >= T::zero() && z <= T::one()) {
            return Err(Error::domain("hyp2f1", format!("z = {z} outside [0, 1]")));
        }
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::domain("hyp2f1", "non-finite parameter"));
        }
        Ok(Self { a, b, c, z })
    }

    pub fn eval(&self) -> Result<T> {
        eval(self.a, self.b, self.c, self.z, T::one() - self.z)
    }
}

/// `₂F₁(a, b; c; z)` for validated arguments.
pub fn hyp2f1<T: Real>(args: HypArgs<T>) -> Result<T> {
    args.eval()
}

/// `₂F₁(a, b; c; z)` from its parameters.
pub fn hyp2f1_abcz<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    HypArgs::new(a, b, c, z)?.eval()
}

/// `₂F₁(a, b; c; 1 - w)` where the caller supplies `w = 1 - z` exactly.
pub fn hyp2f1_complement<T: Real>(a: T, b: T, c: T, w: T) -> Result<T> {
    if !(w >= T::zero() && w <= T::one()) {
        return Err(Error::domain("hyp2f1", format!("complement 1 - z = {w} outside [0, 1]")));
    }
    let args = HypArgs::new(a, b, c, T::one() - w)?;
    eval(args.a, args.b, args.c, args.z, w)
}

/// Gauss summation `₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`.
pub fn hyp2f1_at_one<T: Real>(a: T, b: T, c: T) -> Result<T> {
    if is_nonpositive_integer(c) {
        return Err(Error::domain("hyp2f1_at_one", format!("c = {c} is a non-positive integer")));
    }
    let m = c - a - b;
    if !(m > T::zero()) {
        return Err(Error::domain("hyp2f1_at_one", format!("c - a - b = {m} must be positive")));
    }
    gamma_ratio(&[c, m], &[c - a, c - b])
}

/// The defining power series with no transformation applied.
///
/// Exposed so that identity checks can compare both sides of a
/// transformation without the evaluator short-circuiting one into the other.
pub fn hyp2f1_series<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    HypArgs::new(a, b, c, z)?;
    if z == T::one() {
        return Err(Error::Divergent { op: "hyp2f1_series", reason: "z = 1".into() });
    }
    series(a, b, c, z)
}

fn eval<T: Real>(a: T, b: T, c: T, z: T, w: T) -> Result<T> {
    if z == T::zero() {
        return Ok(T::one());
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return terminating(a, b, c, z);
    }
    let m = c - a - b;
    if w == T::zero() {
        if m > T::zero() {
            return hyp2f1_at_one(a, b, c);
        }
        return Err(Error::Divergent { op: "hyp2f1", reason: format!("z = 1 with c - a - b = {m} <= 0") });
    }
    if z <= T::lit(RAW_SERIES_MAX_Z) {
        return series(a, b, c, z);
    }
    if z <= T::lit(SERIES_MAX_Z) {
        if m < T::zero() {
            return Ok(w.powf(m) * series(c - a, c - b, c, z)?);
        }
        return series(a, b, c, z);
    }
    near_one(a, b, c, w)
}

fn terminating<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    let mut sum = T::one();
    let mut term = T::one();
    for k in 0..MAX_TERMS {
        let kf = T::from_count(k);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + T::one())) * z;
        if term == T::zero() {
            return Ok(sum);
        }
        sum = sum + term;
    }
    Err(Error::NonConvergence { op: "hyp2f1 terminating series", iterations: MAX_TERMS })
}

fn series<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    let tol = T::epsilon() * T::lit(0.5);
    let mut sum = T::one();
    let mut term = T::one();
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = T::from_count(k);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + T::one())) * z;
        sum = sum + term;
        if term.abs() <= tol * sum.abs() {
            small += 1;
            if small >= SMALL_RUN {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence { op: "hyp2f1 series", iterations: MAX_TERMS })
}

/// Connection formulas around `z = 1`, written in `w = 1 - z`.
fn near_one<T: Real>(a: T, b: T, c: T, w: T) -> Result<T> {
    let m = c - a - b;
    if m < T::zero() {
        // Euler transform to a positive exponent first.
        return Ok(w.powf(m) * near_one(c - a, c - b, c, w)?);
    }
    let mr = m.round();
    if (m - mr).abs() > T::lit(INTEGER_TOL) {
        let first = gamma_ratio(&[c, m], &[c - a, c - b])?;
        let second = gamma_ratio(&[c, -m], &[a, b])?;
        let s1 = if first == T::zero() { T::zero() } else { series(a, b, T::one() - m, w)? };
        let s2 = if second == T::zero() { T::zero() } else { series(c - a, c - b, T::one() + m, w)? };
        return Ok(first * s1 + second * w.powf(m) * s2);
    }
    let order = mr.to_usize().unwrap_or(0);
    if order == 0 {
        log_case_zero(a, b, w)
    } else {
        log_case_positive(a, b, order, w)
    }
}

/// `c = a + b`.
fn log_case_zero<T: Real>(a: T, b: T, w: T) -> Result<T> {
    let pre = gamma_ratio(&[a + b], &[a, b])?;
    let ln_w = w.ln();
    let two = T::lit(2.0);
    let mut psi_n1 = digamma(T::one())?;
    let mut psi_a = digamma(a)?;
    let mut psi_b = digamma(b)?;
    let mut coef = T::one();
    let mut sum = T::zero();
    let tol = T::epsilon() * T::lit(0.5);
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = T::from_count(n);
        let term = coef * (two * psi_n1 - psi_a - psi_b - ln_w);
        sum = sum + term;
        if term.abs() <= tol * sum.abs() {
            small += 1;
            if small >= SMALL_RUN {
                return Ok(pre * sum);
            }
        } else {
            small = 0;
        }
        coef = coef * (a + nf) * (b + nf) / ((nf + T::one()) * (nf + T::one())) * w;
        psi_n1 = psi_n1 + (nf + T::one()).recip();
        psi_a = psi_a + (a + nf).recip();
        psi_b = psi_b + (b + nf).recip();
    }
    Err(Error::NonConvergence { op: "hyp2f1 logarithmic case", iterations: MAX_TERMS })
}

/// `c = a + b + order`, `order >= 1`.
fn log_case_positive<T: Real>(a: T, b: T, order: usize, w: T) -> Result<T> {
    let mf = T::from_count(order);
    let c = a + b + mf;

    // Finite part: Γ(m)Γ(c)/(Γ(a+m)Γ(b+m)) Σ_{n<m} (a)_n (b)_n / (n! (1-m)_n) w^n
    let pre_finite = gamma_ratio(&[mf, c], &[a + mf, b + mf])?;
    let mut finite = T::zero();
    let mut coef = T::one();
    for n in 0..order {
        let nf = T::from_count(n);
        finite = finite + coef;
        coef = coef * (a + nf) * (b + nf) / ((nf + T::one()) * (T::one() - mf + nf)) * w;
    }

    // Logarithmic part: -(-w)^m Γ(c)/(Γ(a)Γ(b)) Σ (a+m)_n (b+m)_n / (n! (n+m)!) w^n
    //   × [ln w - ψ(n+1) - ψ(n+m+1) + ψ(a+n+m) + ψ(b+n+m)]
    let pre_log = gamma_ratio(&[c], &[a, b])?;
    if pre_log == T::zero() {
        return Ok(pre_finite * finite);
    }
    let ln_w = w.ln();
    let mut psi_n1 = digamma(T::one())?;
    let mut psi_nm1 = digamma(mf + T::one())?;
    let mut psi_a = digamma(a + mf)?;
    let mut psi_b = digamma(b + mf)?;
    // 1 / m!
    let mut coef = gamma_ratio(&[], &[mf + T::one()])?;
    let mut sum = T::zero();
    let tol = T::epsilon() * T::lit(0.5);
    let mut small = 0;
    let mut converged = false;
    for n in 0..MAX_TERMS {
        let nf = T::from_count(n);
        let term = coef * (ln_w - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum = sum + term;
        if term.abs() <= tol * sum.abs() {
            small += 1;
            if small >= SMALL_RUN {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
        coef = coef * (a + mf + nf) * (b + mf + nf) / ((nf + T::one()) * (nf + mf + T::one())) * w;
        psi_n1 = psi_n1 + (nf + T::one()).recip();
        psi_nm1 = psi_nm1 + (nf + mf + T::one()).recip();
        psi_a = psi_a + (a + mf + nf).recip();
        psi_b = psi_b + (b + mf + nf).recip();
    }
    if !converged {
        return Err(Error::NonConvergence { op: "hyp2f1 logarithmic case", iterations: MAX_TERMS });
    }
    let sign = if order.is_multiple_of(2) { T::one() } else { -T::one() };
    Ok(pre_finite * finite - sign * w.powi(order as i32) * pre_log * sum)
}
