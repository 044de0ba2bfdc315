//! Schur test with the auxiliary function `φ(t) = (1-t)^{-1/(pq)}`.
//!
//! Right ratio: `R(s) = ∫ K_σ(s, t) φ(t)^q dμ(t) / φ(s)^q`.
//! Left ratio:  `L(t) = ∫ K_σ(s, t) φ(s)^p dμ(s) / φ(t)^p`.
//!
//! The powers `φ^q = (1-t)^{-1/p}` and `φ^p = (1-s)^{-1/q}` go into the
//! quadrature exponent. Both ratios increase to `‖F_σ‖` at the endpoint.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operator::{kernel_factor, norm_formula, LebesgueExponent, OperatorParams};
use crate::quadrature::{GradedRule, Quadrature};
use crate::scalar::Real;
use crate::specfun::{gamma_ratio, hyp2f1_complement};

use super::{supremum_grid, GridPoint, PANEL_ORDER};

/// Maxima of the two Schur ratios over a grid, with their values at the
/// point of the grid closest to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurOutcome<T> {
    pub max_ratio_right: T,
    pub max_ratio_left: T,
    pub right_at_edge: T,
    pub left_at_edge: T,
    /// `1 - t` at the point closest to 1.
    pub edge_complement: T,
    pub bound: T,
}

fn check<T: Real>(params: OperatorParams<T>, p: LebesgueExponent<T>) -> Result<()> {
    if !(p.p() > T::one()) {
        return Err(Error::domain("schur_check", format!("p = {} must exceed 1", p.p())));
    }
    if !params.is_bounded_on(p) {
        return Err(Error::domain(
            "schur_check",
            format!("sigma = {} must exceed 1/p - 1 = {}", params.sigma(), p.p().recip() - T::one()),
        ));
    }
    Ok(())
}

/// `R(s)` by graded quadrature in `t`.
pub fn schur_ratio_right<T: Real>(params: OperatorParams<T>, p: LebesgueExponent<T>, s: GridPoint<T>) -> Result<T> {
    check(params, p)?;
    let inv_p = p.p().recip();
    let rule = GradedRule::resolving(params.mu() - T::one(), params.sigma() - inv_p, s.complement, PANEL_ORDER)?;
    let inner = rule.try_integrate(|_, tc| kernel_factor(params, s.value, s.complement, tc))?;
    Ok(params.mu() * inner * s.complement.powf(inv_p))
}

/// `L(t)` by graded quadrature in `s`.
pub fn schur_ratio_left<T: Real>(params: OperatorParams<T>, p: LebesgueExponent<T>, t: GridPoint<T>) -> Result<T> {
    check(params, p)?;
    let inv_q = p.inv_q();
    let rule = GradedRule::resolving(params.mu() - T::one(), -inv_q, t.complement, PANEL_ORDER)?;
    let inner = rule.try_integrate(|s, sc| kernel_factor(params, s, sc, t.complement))?;
    Ok(params.mu() * inner * t.complement.powf(params.sigma() + inv_q))
}

/// Closed form of `R(s)`:
/// `Γ(μ+1)Γ(σ+1-1/p)/Γ(2λ-1/p) · ₂F₁(λ-1/p, λ-1/p; 2λ-1/p; s)`.
pub fn schur_ratio_right_closed<T: Real>(
    params: OperatorParams<T>,
    p: LebesgueExponent<T>,
    s: GridPoint<T>,
) -> Result<T> {
    check(params, p)?;
    let inv_p = p.p().recip();
    let c = T::lit(2.0) * params.lambda() - inv_p;
    let a = params.lambda() - inv_p;
    let g = gamma_ratio(&[params.mu() + T::one(), params.sigma() + T::one() - inv_p], &[c])?;
    Ok(g * hyp2f1_complement(a, a, c, s.complement)?)
}

/// Closed form of `L(t)`:
/// `Γ(μ+1)Γ(1/p)/Γ(μ+1/p) · ₂F₁(μ+1/p-λ, μ+1/p-λ; μ+1/p; t)`.
pub fn schur_ratio_left_closed<T: Real>(
    params: OperatorParams<T>,
    p: LebesgueExponent<T>,
    t: GridPoint<T>,
) -> Result<T> {
    check(params, p)?;
    let inv_p = p.p().recip();
    let c = params.mu() + inv_p;
    let a = c - params.lambda();
    let g = gamma_ratio(&[params.mu() + T::one(), inv_p], &[c])?;
    Ok(g * hyp2f1_complement(a, a, c, t.complement)?)
}

/// Both Schur ratios over the supremum grid of `grid_size` Chebyshev points
/// plus the dyadic refinement toward 1.
pub fn schur_check<T: Real>(
    params: OperatorParams<T>,
    p: LebesgueExponent<T>,
    grid_size: usize,
) -> Result<SchurOutcome<T>> {
    check(params, p)?;
    let bound = norm_formula(params, p)?;
    let grid = supremum_grid::<T>(grid_size);
    let pairs: Vec<(T, T)> = grid
        .par_iter()
        .map(|&g| Ok((schur_ratio_right(params, p, g)?, schur_ratio_left(params, p, g)?)))
        .collect::<Result<_>>()?;
    let edge = grid
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.complement.partial_cmp(&b.1.complement).expect("finite grid"))
        .map(|(i, _)| i)
        .expect("non-empty grid");
    let max_ratio_right = pairs.iter().fold(T::zero(), |m, r| m.max(r.0));
    let max_ratio_left = pairs.iter().fold(T::zero(), |m, r| m.max(r.1));
    Ok(SchurOutcome {
        max_ratio_right,
        max_ratio_left,
        right_at_edge: pairs[edge].0,
        left_at_edge: pairs[edge].1,
        edge_complement: grid[edge].complement,
        bound,
    })
}
