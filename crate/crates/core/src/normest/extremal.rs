//! Lower bounds from the test pairs
//!
//! ```text
//! Φ(t) = C t^{θ/p} (1-t)^{θ̃/p},   Ψ(s) = C̃ s^{ϑ/q} (1-s)^{ϑ̃/q},   ϑ = 0,  ϑ̃ = (θ-p)/(p-1)
//! ```
//!
//! normalized in `L^p_μ` and `L^q_μ`. The pairing `∫ F_σΦ Ψ dμ` has the
//! closed form
//!
//! ```text
//! μ C C̃ Γ(μ+1) Γ(θ/p) Γ(θ̃/p + σ + 1) Γ((θ+θ̃)/p) / Γ²((θ+θ̃)/p + λ)
//! ```
//!
//! and tends to `‖F_σ‖` along `θ = 1 + (p-1)η`, `θ̃ = η - 1`, `η → 0⁺`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operator::{kernel_factor, LebesgueExponent, OperatorParams};
use crate::quadrature::{GradedRule, JacobiRule, Quadrature};
use crate::scalar::Real;
use crate::specfun::{ln_beta, ln_gamma};

/// `θ̃` at or below this is rejected by the numeric pairing.
pub const THETA_TILDE_MIN: f64 = -0.99;
/// Panels of the tensor rule away from the corner.
const TENSOR_DEPTH: usize = 8;
/// Panels of the radial rule inside the corner cell.
const CORNER_DEPTH: usize = 40;

/// One member of the extremal family.
///
/// `θ - 1` and `θ̃ + 1` are stored separately so that the path
/// `θ - 1 = (p-1)(θ̃ + 1)` is represented without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalFamily<T> {
    pub p: LebesgueExponent<T>,
    pub theta: T,
    pub theta_tilde: T,
    pub vartheta: T,
    pub vartheta_tilde: T,
    /// `θ - 1`.
    pub zeta: T,
    /// `θ̃ + 1`.
    pub eta: T,
    pub c: T,
    pub c_tilde: T,
}

impl<T: Real> ExtremalFamily<T> {
    pub fn new(params: OperatorParams<T>, p: LebesgueExponent<T>, theta: T, theta_tilde: T) -> Result<Self> {
        Self::from_offsets(params, p, theta - T::one(), theta_tilde + T::one())
    }

    /// The member `θ = 1 + (p-1)η`, `θ̃ = η - 1`.
    pub fn on_path(params: OperatorParams<T>, p: LebesgueExponent<T>, eta: T) -> Result<Self> {
        Self::from_offsets(params, p, (p.p() - T::one()) * eta, eta)
    }

    /// Builds the member with `θ = 1 + zeta`, `θ̃ = eta - 1`.
    pub fn from_offsets(params: OperatorParams<T>, p: LebesgueExponent<T>, zeta: T, eta: T) -> Result<Self> {
        let pp = p.p();
        if !(pp > T::one()) {
            return Err(Error::domain("extremal_family", format!("p = {pp} must exceed 1")));
        }
        if !(zeta > T::zero()) {
            return Err(Error::domain("extremal_family", "theta must exceed 1"));
        }
        if !(eta > T::zero()) {
            return Err(Error::domain("extremal_family", "theta_tilde must exceed -1"));
        }
        if !params.is_bounded_on(p) {
            return Err(Error::domain("extremal_family", "sigma must exceed 1/p - 1"));
        }
        let mu = params.mu();
        // ϑ̃ + 1 = (θ - 1)/(p - 1)
        let vt_plus_one = zeta / (pp - T::one());
        let ln_c = -(mu.ln() + ln_beta(mu + T::one() + zeta, eta)?) / pp;
        let ln_c_tilde = -(mu.ln() + ln_beta(mu, vt_plus_one)?) / p.q();
        Ok(Self {
            p,
            theta: T::one() + zeta,
            theta_tilde: eta - T::one(),
            vartheta: T::zero(),
            vartheta_tilde: vt_plus_one - T::one(),
            zeta,
            eta,
            c: ln_c.exp(),
            c_tilde: ln_c_tilde.exp(),
        })
    }

    /// `ln C + ln C̃`, kept separate from the rounded `c`, `c_tilde`.
    fn ln_normalization(&self, mu: T) -> Result<T> {
        let pp = self.p.p();
        let vt_plus_one = self.zeta / (pp - T::one());
        Ok(-(mu.ln() + ln_beta(mu + T::one() + self.zeta, self.eta)?) / pp
            - (mu.ln() + ln_beta(mu, vt_plus_one)?) / self.p.q())
    }
}

/// Closed form of `∫ F_σΦ(s) Ψ(s) dμ(s)`, evaluated in the log domain.
pub fn bilinear_form_closed<T: Real>(params: OperatorParams<T>, fam: &ExtremalFamily<T>) -> Result<T> {
    let pp = fam.p.p();
    let mu = params.mu();
    // (θ + θ̃)/p = (ζ + η)/p
    let sum = (fam.zeta + fam.eta) / pp;
    let ln = mu.ln()
        + fam.ln_normalization(mu)?
        + ln_gamma(mu + T::one())?
        + ln_gamma(fam.theta / pp)?
        + ln_gamma(params.sigma() + T::one() + (fam.eta - T::one()) / pp)?
        + ln_gamma(sum)?
        - T::lit(2.0) * ln_gamma(sum + params.lambda())?;
    Ok(ln.exp())
}

/// `∫ F_σΦ Ψ dμ` as a double integral over `(s, t)`.
///
/// In `x = 1-s`, `y = 1-t` the integrand is
/// `s^{μ-1} x^a · t^{μ+θ/p-1} y^b · ₂F₁(λ, λ; μ; st)` with `a = ϑ̃/q` and
/// `b = σ + θ̃/p`, singular like `(x+y)^{-σ-1}` at the corner. A tensor
/// product of graded rules covers the square except the cell `[0, h]²`,
/// which is split along the diagonal and mapped by `y = x v` (resp.
/// `x = y u`) to rules with the radial weight `x^{(θ+θ̃)/p - 1}`.
/// `order` is the number of nodes per panel.
pub fn bilinear_form_numeric<T: Real>(params: OperatorParams<T>, fam: &ExtremalFamily<T>, order: usize) -> Result<T> {
    if !(fam.theta_tilde > T::lit(THETA_TILDE_MIN)) {
        return Err(Error::Quadrature {
            op: "bilinear_form_numeric",
            reason: format!("theta_tilde = {} too close to -1 for the endpoint rule", fam.theta_tilde),
        });
    }
    let pp = fam.p.p();
    let mu = params.mu();
    let one = T::one();
    // ϑ̃/q = θ/p - 1
    let a = fam.theta / pp - one;
    let b = params.sigma() + (fam.eta - one) / pp;
    let t_alpha = mu + fam.theta / pp - one;
    let radial = (fam.zeta + fam.eta) / pp - one;

    let rule_s = GradedRule::new(mu - one, a, TENSOR_DEPTH, order)?;
    let rule_t = GradedRule::new(t_alpha, b, TENSOR_DEPTH, order)?;
    let h = T::lit(0.5).powi(TENSOR_DEPTH as i32);

    let s_nodes: Vec<(T, T, T)> = triples(&rule_s);
    let t_nodes: Vec<(T, T, T)> = triples(&rule_t);
    let tensor: T = s_nodes
        .par_iter()
        .map(|&(s, x, ws)| {
            let mut acc = T::zero();
            for &(_, y, wt) in &t_nodes {
                if x <= h && y <= h {
                    continue;
                }
                acc = acc + wt * kernel_factor(params, s, x, y)?;
            }
            Ok(ws * acc)
        })
        .collect::<Result<Vec<T>>>()?
        .into_iter()
        .fold(T::zero(), |acc, v| acc + v);

    // Corner cell. Radial rule in r ∈ (0, h) with weight r^radial, graded
    // toward r = 0 through r = h (1 - u).
    let rad = GradedRule::new(T::zero(), radial, CORNER_DEPTH, order)?;
    let rad_scale = h.powf(radial + one);
    let below = JacobiRule::new(b, T::zero(), order.max(8) * 2)?; // y = x v, weight v^b
    let above = JacobiRule::new(a, T::zero(), order.max(8) * 2)?; // x = y u, weight u^a
                                                                  // r^{σ+1} times the smooth part, bounded as r → 0
    let lift = params.sigma() + one;
    let g = |x: T, y: T, r: T| -> Result<T> {
        let s = one - x;
        let t = one - y;
        Ok(s.powf(mu - one) * t.powf(t_alpha) * kernel_factor(params, s, x, y)? * r.powf(lift))
    };
    let corner: T = (0..rad.len())
        .into_par_iter()
        .map(|k| {
            let r = h * rad.complements()[k];
            let mut acc = T::zero();
            for (&v, &wv) in below.nodes().iter().zip(below.weights()) {
                acc = acc + wv * g(r, r * v, r)?;
            }
            for (&u, &wu) in above.nodes().iter().zip(above.weights()) {
                acc = acc + wu * g(r * u, r, r)?;
            }
            Ok(rad.weights()[k] * acc)
        })
        .collect::<Result<Vec<T>>>()?
        .into_iter()
        .fold(T::zero(), |acc, v| acc + v);

    let ln_pref = T::lit(2.0) * mu.ln() + fam.ln_normalization(mu)?;
    Ok(ln_pref.exp() * (tensor + rad_scale * corner))
}

fn triples<T: Real, Q: Quadrature<T>>(rule: &Q) -> Vec<(T, T, T)> {
    (0..rule.len()).map(|i| (rule.nodes()[i], rule.complements()[i], rule.weights()[i])).collect()
}

/// `bilinear_form_closed` along `θ = 1 + (p-1)η`, `θ̃ = η - 1` for each `η`.
pub fn lower_bound_sweep<T: Real>(
    params: OperatorParams<T>,
    p: LebesgueExponent<T>,
    etas: &[T],
) -> Result<Vec<(T, T)>> {
    etas.par_iter()
        .map(|&eta| {
            if !(eta > T::zero()) {
                return Err(Error::domain("lower_bound_sweep", format!("eta = {eta} must be positive")));
            }
            let fam = ExtremalFamily::on_path(params, p, eta)?;
            Ok((eta, bilinear_form_closed(params, &fam)?))
        })
        .collect()
}

/// `η = 10^{-1}, 10^{-2}, ..., eta_min`.
pub fn decade_etas<T: Real>(eta_min: T) -> Vec<T> {
    let mut out = Vec::new();
    let mut eta = T::lit(0.1);
    while eta >= eta_min * T::lit(1.0 - 1e-9) {
        out.push(eta);
        eta = eta / T::lit(10.0);
    }
    out
}
