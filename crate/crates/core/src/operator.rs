//! The integral operator
//!
//! ```text
//! F_σ φ(s) = μ ∫₀¹ (1-t)^σ ₂F₁(λ, λ; μ; s t) φ(t) t^{μ-1} dt,   λ = (μ + σ + 1) / 2
//! ```
//!
//! on `L^p_μ(0, 1)`: kernel evaluation, application, Nyström matrices and
//! the closed-form norm.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_weighted, try_integrate_weighted, GradedRule, JacobiRule, Quadrature};
use crate::scalar::Real;
use crate::specfun::{gamma_ratio, hyp2f1_complement, ln_gamma};

/// Parameters `μ > 0`, `σ > -1` and the derived `λ = (μ + σ + 1) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams<T> {
    mu: T,
    sigma: T,
    lambda: T,
}

impl<T: Real> OperatorParams<T> {
    pub fn new(mu: T, sigma: T) -> Result<Self> {
        if !(mu > T::zero() && mu.is_finite()) {
            return Err(Error::domain("operator", format!("mu = {mu} must be positive")));
        }
        if !(sigma > -T::one() && sigma.is_finite()) {
            return Err(Error::domain("operator", format!("sigma = {sigma} must exceed -1")));
        }
        let lambda = (mu + sigma + T::one()) / T::lit(2.0);
        Ok(Self { mu, sigma, lambda })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// `L^p` boundedness threshold: bounded iff `σ > 1/p - 1`.
    pub fn is_bounded_on(&self, p: LebesgueExponent<T>) -> bool {
        self.sigma > p.p.recip() - T::one()
    }
}

/// Exponent `p ∈ [1, ∞)` with its conjugate `q` (`q = ∞` for `p = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LebesgueExponent<T> {
    p: T,
    q: T,
}

impl<T: Real> LebesgueExponent<T> {
    pub fn new(p: T) -> Result<Self> {
        if !(p >= T::one() && p.is_finite()) {
            return Err(Error::domain("lebesgue_exponent", format!("p = {p} must lie in [1, inf)")));
        }
        let q = if p == T::one() { T::infinity() } else { p / (p - T::one()) };
        Ok(Self { p, q })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    /// `1/q`, which is 0 for `p = 1`.
    pub fn inv_q(&self) -> T {
        T::one() - self.p.recip()
    }
}

/// `K_σ(s, t) = (1-t)^σ ₂F₁(λ, λ; μ; s t)`.
pub fn kernel_eval<T: Real>(params: OperatorParams<T>, s: T, t: T) -> Result<T> {
    check_unit("kernel_eval", s)?;
    check_unit("kernel_eval", t)?;
    kernel_eval_complement(params, s, T::one() - s, T::one() - t)
}

/// [`kernel_eval`] with the complements `1-s`, `1-t` supplied by the
/// caller, so that `1 - s t = (1-s) + s (1-t)` stays accurate near the
/// corner.
pub fn kernel_eval_complement<T: Real>(params: OperatorParams<T>, s: T, sc: T, tc: T) -> Result<T> {
    Ok(tc.powf(params.sigma) * kernel_factor(params, s, sc, tc)?)
}

/// `₂F₁(λ, λ; μ; s t)` from `s`, `1-s` and `1-t`.
pub(crate) fn kernel_factor<T: Real>(params: OperatorParams<T>, s: T, sc: T, tc: T) -> Result<T> {
    let lambda = params.lambda;
    hyp2f1_complement(lambda, lambda, params.mu, sc + s * tc)
}

fn check_unit<T: Real>(op: &'static str, x: T) -> Result<()> {
    if !(x >= T::zero() && x < T::one()) {
        return Err(Error::domain(op, format!("argument {x} outside [0, 1)")));
    }
    Ok(())
}

/// `F_σ φ(s)` by Gauss–Jacobi quadrature of order `rule_order`.
pub fn apply<T: Real, F: Fn(T) -> T>(params: OperatorParams<T>, phi: F, s: T, rule_order: usize) -> Result<T> {
    check_unit("apply", s)?;
    let sc = T::one() - s;
    try_integrate_weighted(|t, tc| Ok(kernel_factor(params, s, sc, tc)? * phi(t)), params.mu, params.sigma, rule_order)
}

/// `F_σ φ(s)` for `φ(t) = (1-t)^γ ψ(t)`, with `(1-t)^γ` absorbed into the
/// rule exponent. Requires `σ + γ > -1`.
pub fn apply_with_endpoint_power<T: Real, F: Fn(T) -> T>(
    params: OperatorParams<T>,
    gamma: T,
    psi: F,
    s: T,
    rule_order: usize,
) -> Result<T> {
    check_unit("apply", s)?;
    let sc = T::one() - s;
    try_integrate_weighted(
        |t, tc| Ok(kernel_factor(params, s, sc, tc)? * psi(t)),
        params.mu,
        params.sigma + gamma,
        rule_order,
    )
}

/// Closed form of `F_σ 1(s) = Γ(μ+1)Γ(σ+1)/Γ(2λ) · ₂F₁(λ, λ; 2λ; s)`.
pub fn apply_one_closed<T: Real>(params: OperatorParams<T>, s: T) -> Result<T> {
    check_unit("apply_one_closed", s)?;
    let lambda = params.lambda;
    let g = gamma_ratio(&[params.mu + T::one(), params.sigma + T::one()], &[T::lit(2.0) * lambda])?;
    Ok(g * hyp2f1_complement(lambda, lambda, T::lit(2.0) * lambda, T::one() - s)?)
}

/// `‖F_σ‖_{L^p_μ → L^p_μ} = Γ(μ+1)/Γ²(λ) · Γ(1/p) Γ(σ + 1 - 1/p)`.
pub fn norm_formula<T: Real>(params: OperatorParams<T>, p: LebesgueExponent<T>) -> Result<T> {
    let inv_p = p.p.recip();
    if !params.is_bounded_on(p) {
        return Err(Error::Unbounded {
            p: p.p.to_f64_lossy(),
            sigma: params.sigma.to_f64_lossy(),
            threshold: (inv_p - T::one()).to_f64_lossy(),
        });
    }
    let ln = ln_gamma(params.mu + T::one())? - T::lit(2.0) * ln_gamma(params.lambda)?
        + ln_gamma(inv_p)?
        + ln_gamma(params.sigma + T::one() - inv_p)?;
    Ok(ln.exp())
}

/// Nyström matrix `A[i][j] = μ w_j ₂F₁(λ, λ; μ; s_i t_j)` on the nodes of a
/// rule for `t^{μ-1} (1-t)^σ`, so `(1-t_j)^σ` sits inside `w_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedOperator<T> {
    pub params: OperatorParams<T>,
    pub p: LebesgueExponent<T>,
    pub nodes: Vec<T>,
    pub complements: Vec<T>,
    /// Rule weights `w_j` (include `t^{μ-1} (1-t)^σ`).
    pub weights: Vec<T>,
    /// Weights of the measure `μ t^{μ-1} dt` at the nodes, `μ w_j (1-t_j)^{-σ}`.
    pub measure_weights: Vec<T>,
    /// Row-major `order × order`.
    pub matrix: Vec<T>,
}

impl<T: Real> DiscretizedOperator<T> {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> T {
        self.matrix[i * self.order() + j]
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        let n = self.order();
        self.matrix.chunks(n).map(|row| row.iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b)).collect()
    }

    /// `Aᵀ y`.
    pub fn mul_vec_transpose(&self, y: &[T]) -> Vec<T> {
        let n = self.order();
        let mut out = vec![T::zero(); n];
        for (row, &yi) in self.matrix.chunks(n).zip(y) {
            for (o, &a) in out.iter_mut().zip(row) {
                *o = *o + a * yi;
            }
        }
        out
    }

    fn assemble<Q: Quadrature<T>>(params: OperatorParams<T>, p: LebesgueExponent<T>, rule: &Q) -> Result<Self> {
        let n = rule.len();
        let nodes = rule.nodes().to_vec();
        let complements = rule.complements().to_vec();
        let weights = rule.weights().to_vec();
        let mu = params.mu;
        let rows: Vec<Vec<T>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| Ok(mu * weights[j] * kernel_factor(params, nodes[i], complements[i], complements[j])?))
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<_>>()?;
        let matrix = rows.into_iter().flatten().collect();
        let measure_weights = weights.iter().zip(&complements).map(|(&w, &c)| mu * w * c.powf(-params.sigma)).collect();
        Ok(Self { params, p, nodes, complements, weights, measure_weights, matrix })
    }
}

/// Nyström discretization on the Gauss–Jacobi rule with `alpha = μ-1`,
/// `beta = σ`, used both for the `s` grid and the `t` integration.
pub fn discretize<T: Real>(
    params: OperatorParams<T>,
    p: LebesgueExponent<T>,
    order: usize,
) -> Result<DiscretizedOperator<T>> {
    if order < 2 {
        return Err(Error::domain("discretize", "order must be at least 2"));
    }
    let rule = JacobiRule::new(params.mu - T::one(), params.sigma, order)?;
    DiscretizedOperator::assemble(params, p, &rule)
}

/// Nyström discretization on a [`GradedRule`] with `depth + 1` panels of
/// `per_panel` nodes each. The panels shrink geometrically toward `t = 1`,
/// where the kernel concentrates.
pub fn discretize_graded<T: Real>(
    params: OperatorParams<T>,
    p: LebesgueExponent<T>,
    depth: usize,
    per_panel: usize,
) -> Result<DiscretizedOperator<T>> {
    let rule = GradedRule::new(params.mu - T::one(), params.sigma, depth, per_panel)?;
    DiscretizedOperator::assemble(params, p, &rule)
}

/// Panel depth giving `order` nodes with `per_panel` nodes per panel.
pub fn graded_depth_for_order(order: usize, per_panel: usize) -> Result<usize> {
    if per_panel == 0 || !order.is_multiple_of(per_panel) || order / per_panel < 2 {
        return Err(Error::domain(
            "discretize_graded",
            format!("order {order} must be a multiple of {per_panel} with at least two panels"),
        ));
    }
    Ok(order / per_panel - 1)
}

/// `μ ∫ f t^{μ-1} (1-t)^σ dt`, the integral of `f` against the kernel weight.
pub fn weighted_mean<T: Real, F: Fn(T) -> T>(params: OperatorParams<T>, f: F, rule_order: usize) -> Result<T> {
    integrate_weighted(f, params.mu, params.sigma, rule_order)
}
