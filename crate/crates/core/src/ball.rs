//! Unit-ball consequences of the interval theory: the constants `c_σ`,
//! the sphere integral `I_c`, the radial reduction `T̃_σ h = c_σ F_σ H`,
//! closed-form norms of `T̃_σ`, the Bergman projection `T_σ`, Bloch
//! constants and the Berezin transform.
//!
//! The disc routines (`n = 1`) integrate over the unit disc in polar
//! coordinates: Gauss–Jacobi in `u = r²` and the trapezoid rule in angle.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::normest::{lp_opnorm_numeric, NYSTROM_PANEL};
use crate::operator::{
    apply, discretize_graded, graded_depth_for_order, norm_formula, LebesgueExponent, OperatorParams,
};
use crate::quadrature::{JacobiRule, Quadrature};
use crate::scalar::Real;
use crate::specfun::{gamma_ratio, hyp2f1_abcz, ln_gamma};

/// `|z|` above which [`berezin_apply_disc`] refuses to integrate.
pub const DISC_RADIUS_MAX: f64 = 0.95;

/// Complex dimension `n`, weight `σ > -1` and `λ = (n + σ + 1)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallParams<T> {
    n: u32,
    sigma: T,
    lambda: T,
}

impl<T: Real> BallParams<T> {
    pub fn new(n: u32, sigma: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("ball", "dimension n must be at least 1"));
        }
        if !(sigma > -T::one() && sigma.is_finite()) {
            return Err(Error::domain("ball", format!("sigma = {sigma} must exceed -1")));
        }
        let lambda = (T::from_count(n as usize) + sigma + T::one()) / T::lit(2.0);
        Ok(Self { n, sigma, lambda })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    fn dim(&self) -> T {
        T::from_count(self.n as usize)
    }

    /// The interval operator with `μ = n` and the same `σ`.
    pub fn interval(&self) -> OperatorParams<T> {
        OperatorParams::new(self.dim(), self.sigma).expect("validated parameters")
    }
}

/// Radial function `h(w) = H(|w|²)` given by its profile `H` on `[0, 1)`.
#[derive(Debug, Clone, Copy)]
pub struct RadialFunction<F>(pub F);

impl<F> RadialFunction<F> {
    pub fn profile<T>(&self, r2: T) -> T
    where
        F: Fn(T) -> T,
    {
        (self.0)(r2)
    }
}

/// `c_σ = Γ(n+σ+1) / (Γ(σ+1) Γ(n+1))`.
pub fn c_sigma<T: Real>(n: u32, sigma: T) -> Result<T> {
    if !(sigma > -T::one()) {
        return Err(Error::domain("c_sigma", format!("sigma = {sigma} must exceed -1")));
    }
    if n == 0 {
        return Err(Error::domain("c_sigma", "dimension n must be at least 1"));
    }
    let nn = T::from_count(n as usize);
    gamma_ratio(&[nn + sigma + T::one()], &[sigma + T::one(), nn + T::one()])
}

/// `I_c(z) = ₂F₁(λ̃, λ̃; n; |z|²)` with `λ̃ = (n + c)/2`.
pub fn i_c<T: Real>(n: u32, c: T, r2: T) -> Result<T> {
    if !(r2 >= T::zero() && r2 < T::one()) {
        return Err(Error::domain("i_c", format!("|z|^2 = {r2} outside [0, 1)")));
    }
    let nn = T::from_count(n as usize);
    let lt = (nn + c) / T::lit(2.0);
    hyp2f1_abcz(lt, lt, nn, r2)
}

/// `T̃_σ h(z) = c_σ F_σ H(|z|²)`.
pub fn radial_apply<T: Real, F: Fn(T) -> T>(
    bp: BallParams<T>,
    h: &RadialFunction<F>,
    r2: T,
    order: usize,
) -> Result<T> {
    Ok(c_sigma(bp.n, bp.sigma)? * apply(bp.interval(), |t| h.profile(t), r2, order)?)
}

fn unbounded<T: Real>(p: T, sigma: T) -> Error {
    Error::Unbounded {
        p: p.to_f64_lossy(),
        sigma: sigma.to_f64_lossy(),
        threshold: (p.recip() - T::one()).to_f64_lossy(),
    }
}

/// `‖T̃_σ‖_{L^p → L^p} = Γ(n+σ+1) / (Γ²(λ) Γ(σ+1)) · Γ(1/p) Γ(σ+1-1/p)`.
pub fn tilde_norm_formula<T: Real>(bp: BallParams<T>, p: T) -> Result<T> {
    if !(p >= T::one() && p.is_finite()) {
        return Err(Error::domain("tilde_norm_formula", format!("p = {p} must lie in [1, inf)")));
    }
    let inv_p = p.recip();
    if !(bp.sigma > inv_p - T::one()) {
        return Err(unbounded(p, bp.sigma));
    }
    let ln =
        ln_gamma(bp.dim() + bp.sigma + T::one())? - T::lit(2.0) * ln_gamma(bp.lambda)? - ln_gamma(bp.sigma + T::one())?
            + ln_gamma(inv_p)?
            + ln_gamma(bp.sigma + T::one() - inv_p)?;
    Ok(ln.exp())
}

/// `c_σ ‖F_σ‖` with `μ = n`, the interval side of [`tilde_norm_formula`].
pub fn tilde_norm_via_interval<T: Real>(bp: BallParams<T>, p: T) -> Result<T> {
    Ok(c_sigma(bp.n, bp.sigma)? * norm_formula(bp.interval(), LebesgueExponent::new(p)?)?)
}

/// Conjugate exponent on `(1, ∞]`, with `q = 1` for `p = ∞`.
pub fn conjugate<T: Real>(p: T) -> Result<T> {
    if p.is_infinite() && p > T::zero() {
        return Ok(T::one());
    }
    if !(p > T::one()) {
        return Err(Error::domain("conjugate", format!("p = {p} must lie in (1, inf]")));
    }
    Ok(p / (p - T::one()))
}

/// `‖T̃*_σ‖_{L^p} = ‖T̃_σ‖_{L^q}`, `1 < p <= ∞`.
pub fn conj_tilde_norm_formula<T: Real>(bp: BallParams<T>, p: T) -> Result<T> {
    tilde_norm_formula(bp, conjugate(p)?)
}

/// Exact norms of the Bergman projection `T_σ`:
/// `L¹ → L¹_a` (for `σ > 0`) and `L² → L²_a` (for `σ > -1/2`).
pub fn bergman_exact_norms<T: Real>(bp: BallParams<T>) -> (Option<T>, Option<T>) {
    let l1 = if bp.sigma > T::zero() {
        gamma_ratio(&[bp.sigma, T::lit(2.0) * bp.lambda], &[bp.sigma + T::one(), bp.lambda, bp.lambda]).ok()
    } else {
        None
    };
    let l2 = if bp.sigma > T::lit(-0.5) {
        ln_gamma(T::lit(2.0) * bp.sigma + T::one())
            .and_then(|a| Ok((a / T::lit(2.0) - ln_gamma(bp.sigma + T::one())?).exp()))
            .ok()
    } else {
        None
    };
    (l1, l2)
}

/// Interpolated bound `{L¹ value}^{2/p-1} {L² value}^{2-2/p}`, `1 <= p <= 2`.
pub fn riesz_thorin_bound<T: Real>(bp: BallParams<T>, p: T) -> Result<T> {
    if !(bp.sigma > T::zero()) {
        return Err(Error::domain("riesz_thorin_bound", format!("sigma = {} must be positive", bp.sigma)));
    }
    if !(p >= T::one() && p <= T::lit(2.0)) {
        return Err(Error::domain("riesz_thorin_bound", format!("p = {p} outside [1, 2]")));
    }
    let (l1, l2) = bergman_exact_norms(bp);
    let (l1, l2) = (l1.expect("sigma > 0"), l2.expect("sigma > 0"));
    let two = T::lit(2.0);
    Ok((l1.ln() * (two / p - T::one()) + l2.ln() * (two - two / p)).exp())
}

/// `‖T_σ‖_{L^p → L^p_a} <= ‖T̃_σ‖_{L^p → L^p}`.
pub fn bergman_upper_bound<T: Real>(bp: BallParams<T>, p: T) -> Result<T> {
    tilde_norm_formula(bp, p)
}

/// The unweighted case `σ = 0` through the reflection formula:
/// `Γ(n+1) / Γ²((n+1)/2) · π / sin(π/p)`.
pub fn projection_upper_bound<T: Real>(n: u32, p: T) -> Result<T> {
    if !(p > T::one() && p.is_finite()) {
        return Err(unbounded(p, T::zero()));
    }
    let nn = T::from_count(n as usize);
    let half = (nn + T::one()) / T::lit(2.0);
    let g = gamma_ratio(&[nn + T::one()], &[half, half])?;
    Ok(g * T::PI() / (T::PI() / p).sin())
}

/// Bloch constants `‖T_σ‖_β = Γ(2λ+1)/Γ²(λ+1/2)` and
/// `‖T_σ‖_{L^∞ → 𝓑} = 1 + ‖T_σ‖_β`.
pub fn bloch_constants<T: Real>(bp: BallParams<T>) -> Result<(T, T)> {
    let half = bp.lambda + T::lit(0.5);
    let beta = gamma_ratio(&[T::lit(2.0) * bp.lambda + T::one()], &[half, half])?;
    Ok((beta, T::one() + beta))
}

/// `‖𝔅‖_{L^p → L^p} = ∏_{k=1}^n (1 + 1/(kp)) · (π/p)/sin(π/p)`, and 1 at `p = ∞`.
pub fn berezin_norm<T: Real>(n: u32, p: T) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("berezin_norm", "dimension n must be at least 1"));
    }
    if p.is_infinite() && p > T::zero() {
        return Ok(T::one());
    }
    if !(p > T::one()) {
        return Err(Error::domain("berezin_norm", format!("p = {p} must exceed 1")));
    }
    let mut prod = T::one();
    for k in 1..=n {
        prod = prod * (T::one() + (T::from_count(k as usize) * p).recip());
    }
    let x = T::PI() / p;
    Ok(prod * x / x.sin())
}

/// `(2n+1)!!/(2n)!! · π/2`, with `(2n+1)!! = 2^{n+1} Γ(n+3/2)/√π` and
/// `(2n)!! = 2^n n!`.
pub fn berezin_l2_doublefactorial<T: Real>(n: u32) -> Result<T> {
    let nn = T::from_count(n as usize);
    let ln = T::lit(2.0).ln() + ln_gamma(nn + T::lit(1.5))? - T::lit(0.5) * T::PI().ln() - ln_gamma(nn + T::one())?;
    Ok(ln.exp() * T::FRAC_PI_2())
}

/// `(n + 1)/(p - 1)`, the growth of `‖𝔅‖_{L^p}` as `p → 1⁺`.
pub fn berezin_asymptotic_p_to_1<T: Real>(n: u32, p: T) -> T {
    (T::from_count(n as usize) + T::one()) / (p - T::one())
}

/// Tensor rule on the disc: `(r, weight)` radial pairs for `∫₀¹ (1-u)^beta g(√u) du`
/// and `angular_order` equispaced angles.
type PolarRule<T> = (Vec<(T, T)>, Vec<Complex<T>>);

fn polar_rule<T: Real>(beta: T, radial_order: usize, angular_order: usize) -> Result<PolarRule<T>> {
    if radial_order == 0 || angular_order == 0 {
        return Err(Error::domain("disc_quadrature", "orders must be positive"));
    }
    let rule = JacobiRule::new(T::zero(), beta, radial_order)?;
    let radial = rule.nodes().iter().zip(rule.weights()).map(|(&u, &w)| (u.sqrt(), w)).collect();
    let step = T::TAU() / T::from_count(angular_order);
    let angles = (0..angular_order).map(|k| Complex::from_polar(T::one(), step * T::from_count(k))).collect();
    Ok((radial, angles))
}

fn check_disc_point<T: Real>(op: &'static str, z: Complex<T>) -> Result<()> {
    if !(z.norm() <= T::lit(DISC_RADIUS_MAX)) {
        return Err(Error::Quadrature {
            op,
            reason: format!("|z| = {} exceeds {DISC_RADIUS_MAX}; the kernel is too concentrated", z.norm()),
        });
    }
    Ok(())
}

/// Berezin transform on the unit disc,
/// `𝔅f(z) = ∫ (1-|z|²)² / |1 - z w̄|⁴ f(w) dA(w)/π`.
pub fn berezin_apply_disc<T: Real, F: Fn(Complex<T>) -> T + Sync>(
    f: F,
    z: Complex<T>,
    radial_order: usize,
    angular_order: usize,
) -> Result<T> {
    check_disc_point("berezin_apply_disc", z)?;
    let (radial, angles) = polar_rule(T::zero(), radial_order, angular_order)?;
    let scale = (T::one() - z.norm_sqr()).powi(2) / T::from_count(angular_order);
    let zc = z.conj();
    let total = radial
        .par_iter()
        .map(|&(r, wr)| {
            let ring = angles.iter().fold(T::zero(), |acc, &e| {
                let w = e * r;
                acc + f(w) / (Complex::new(T::one(), T::zero()) - zc * w).norm_sqr().powi(2)
            });
            wr * ring
        })
        .collect::<Vec<T>>()
        .into_iter()
        .fold(T::zero(), |acc, v| acc + v);
    Ok(scale * total)
}

/// `T̃_σ h(z) = c_σ ∫ (1-|w|²)^σ / |1 - z w̄|^{2λ} h(w) dA(w)/π` on the disc
/// (`n = 1`, `2λ = σ + 2`), with `(1-|w|²)^σ` in the radial rule.
pub fn tilde_apply_disc<T: Real, F: Fn(Complex<T>) -> T + Sync>(
    sigma: T,
    h: F,
    z: Complex<T>,
    radial_order: usize,
    angular_order: usize,
) -> Result<T> {
    check_disc_point("tilde_apply_disc", z)?;
    let c = c_sigma(1, sigma)?;
    let (radial, angles) = polar_rule(sigma, radial_order, angular_order)?;
    let expo = (sigma + T::lit(2.0)) / T::lit(2.0);
    let zc = z.conj();
    let total = radial
        .par_iter()
        .map(|&(r, wr)| {
            let ring = angles.iter().fold(T::zero(), |acc, &e| {
                let w = e * r;
                acc + h(w) / (Complex::new(T::one(), T::zero()) - zc * w).norm_sqr().powf(expo)
            });
            wr * ring
        })
        .collect::<Vec<T>>()
        .into_iter()
        .fold(T::zero(), |acc, v| acc + v);
    Ok(c * total / T::from_count(angular_order))
}

/// Lower estimate of `‖𝔅‖_{L^p}` on radial functions: on the radial
/// subspace `𝔅` is the adjoint of `F_{n+1}` with `μ = n`, so its norm is
/// `‖F_{n+1}‖_{L^q}`, estimated on a graded Nyström matrix with `order` nodes.
pub fn berezin_radial_estimate<T: Real>(n: u32, p: T, order: usize) -> Result<T> {
    let q = conjugate(p)?;
    if !q.is_finite() || q <= T::one() {
        return Err(Error::domain("berezin_radial_estimate", "p must lie in (1, inf)"));
    }
    let nn = T::from_count(n as usize);
    let params = OperatorParams::new(nn, nn + T::one())?;
    let disc = discretize_graded(
        params,
        LebesgueExponent::new(q)?,
        graded_depth_for_order(order, NYSTROM_PANEL)?,
        NYSTROM_PANEL,
    )?;
    lp_opnorm_numeric(&disc)
}
