//! `‖F_σ‖_{L¹_μ → L¹_μ}` as the supremum of column integrals.
//!
//! The column integral is `g(t) = ∫₀¹ K_σ(s, t) dμ(s)`; by the Euler
//! formula and transform it equals `₂F₁(μ+1-λ, μ+1-λ; μ+1; t)`, increasing
//! in `t`, with `y - 2x = σ` in the notation of [`diag_sup`].

use rayon::prelude::*;

use crate::error::Result;
use crate::operator::{kernel_factor, OperatorParams};
use crate::quadrature::{GradedRule, Quadrature};
use crate::scalar::Real;
use crate::specfun::{diag_sup, hyp2f1_at_one, hyp2f1_complement, DiagSup};

use super::{supremum_grid, GridPoint, PANEL_ORDER};

/// Outcome of the `L¹` computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum L1Estimate<T> {
    /// `σ > 0`: supremum of the sampled column integrals and the endpoint value.
    Finite { value: T, grid_max: T, endpoint: T },
    /// `σ <= 0`: the column integrals grow without bound near `t = 1`.
    Divergent(DiagSup<T>),
}

impl<T: Real> L1Estimate<T> {
    pub fn value(&self) -> Option<T> {
        match *self {
            L1Estimate::Finite { value, .. } => Some(value),
            L1Estimate::Divergent(_) => None,
        }
    }
}

/// `g(t) = μ ∫₀¹ K_σ(s, t) s^{μ-1} ds` by graded quadrature in `s`, given
/// `1 - t`.
pub fn column_integral<T: Real>(params: OperatorParams<T>, t: GridPoint<T>) -> Result<T> {
    let rule = GradedRule::resolving(params.mu() - T::one(), T::zero(), t.complement, PANEL_ORDER)?;
    let inner = rule.try_integrate(|s, sc| kernel_factor(params, s, sc, t.complement))?;
    Ok(params.mu() * t.complement.powf(params.sigma()) * inner)
}

/// Closed form `₂F₁(μ+1-λ, μ+1-λ; μ+1; t)` of [`column_integral`].
pub fn column_integral_closed<T: Real>(params: OperatorParams<T>, t: GridPoint<T>) -> Result<T> {
    let x = params.mu() + T::one() - params.lambda();
    hyp2f1_complement(x, x, params.mu() + T::one(), t.complement)
}

/// Supremum over a Chebyshev grid of `grid_size` points refined toward
/// `t = 1`, together with the analytic endpoint value.
pub fn l1_norm_numeric<T: Real>(params: OperatorParams<T>, grid_size: usize) -> Result<L1Estimate<T>> {
    let x = params.mu() + T::one() - params.lambda();
    let y = params.mu() + T::one();
    let growth = diag_sup(x, y)?;
    if !(params.sigma() > T::zero()) || !growth.is_bounded() {
        return Ok(L1Estimate::Divergent(growth));
    }
    let grid = supremum_grid::<T>(grid_size);
    let values: Vec<T> = grid.par_iter().map(|&t| column_integral(params, t)).collect::<Result<_>>()?;
    let grid_max = values.iter().fold(T::zero(), |m, &v| m.max(v));
    let endpoint = hyp2f1_at_one(x, x, y)?;
    Ok(L1Estimate::Finite { value: grid_max.max(endpoint), grid_max, endpoint })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_ratio;
    use std::f64::consts::PI;

    #[test]
    fn column_integral_matches_closed_form() {
        let op = OperatorParams::new(1.5_f64, 0.7).unwrap();
        for g in supremum_grid::<f64>(6) {
            let num = column_integral(op, g).unwrap();
            let closed = column_integral_closed(op, g).unwrap();
            assert!((num - closed).abs() < 1e-11 * closed, "t = {}: {num} vs {closed}", g.value);
        }
    }

    #[test]
    fn examples() {
        let v = l1_norm_numeric(OperatorParams::new(1.0_f64, 1.0).unwrap(), 16).unwrap();
        assert!((v.value().unwrap() - 4.0 / PI).abs() < 1e-12);
        let v = l1_norm_numeric(OperatorParams::new(2.0_f64, 2.0).unwrap(), 16).unwrap();
        let expected = gamma_ratio(&[3.0, 2.0], &[2.5, 2.5]).unwrap();
        assert!((v.value().unwrap() - expected).abs() < 1e-12);
        match l1_norm_numeric(OperatorParams::new(1.0_f64, 0.0).unwrap(), 16).unwrap() {
            L1Estimate::Divergent(DiagSup::Logarithmic { .. }) => {}
            other => panic!("{other:?}"),
        }
        match l1_norm_numeric(OperatorParams::new(1.0_f64, -0.3).unwrap(), 16).unwrap() {
            L1Estimate::Divergent(DiagSup::Power { exponent, .. }) => assert!((exponent - 0.3).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }
}
