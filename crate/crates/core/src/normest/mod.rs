//! Numerical routes to `‖F_σ‖`: the `L¹` supremum, the Schur test, the
//! extremal family and the Nyström `p`-norm.

mod extremal;
mod l1;
mod pnorm;
mod schur;

pub use extremal::{
    bilinear_form_closed, bilinear_form_numeric, decade_etas, lower_bound_sweep, ExtremalFamily, THETA_TILDE_MIN,
};
pub use l1::{column_integral, column_integral_closed, l1_norm_numeric, L1Estimate};
pub use pnorm::{
    l2_opnorm_singular, lp_opnorm_numeric, lp_opnorm_numeric_with, symmetrized_matrix, PowerMethod, DEFAULT_SEED,
    MAX_ITERATIONS, RESTARTS, STAGNATION,
};
pub use schur::{
    schur_check, schur_ratio_left, schur_ratio_left_closed, schur_ratio_right, schur_ratio_right_closed, SchurOutcome,
};

use crate::error::Result;
use crate::operator::{discretize_graded, graded_depth_for_order, norm_formula, LebesgueExponent, OperatorParams};
use crate::scalar::Real;

/// Nodes per panel of the graded rules used by the supremum routes.
pub const PANEL_ORDER: usize = 16;
/// Deepest dyadic refinement `1 - 2^{-k}` of the supremum grids.
pub const REFINE_DEPTH: i32 = 40;
/// Nodes per panel of the graded Nyström discretization.
pub const NYSTROM_PANEL: usize = 8;
/// `σ - (1/p - 1)` below which a report is flagged as near blow-up.
pub const BLOWUP_MARGIN: f64 = 0.05;

/// A point of `(0, 1)` with its complement `1 - t` stored exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint<T> {
    pub value: T,
    pub complement: T,
}

impl<T: Real> GridPoint<T> {
    pub fn new(value: T) -> Self {
        Self { value, complement: T::one() - value }
    }

    /// The point `1 - complement`.
    pub fn from_complement(complement: T) -> Self {
        Self { value: T::one() - complement, complement }
    }
}

/// `n` Chebyshev points in `(0, 1)` followed by `1 - 2^{-k}`,
/// `k = 1 ..= 40`.
pub fn supremum_grid<T: Real>(n: usize) -> Vec<GridPoint<T>> {
    let mut grid = Vec::with_capacity(n + REFINE_DEPTH as usize);
    for k in 0..n {
        let half = T::PI() * (T::from_count(k) + T::lit(0.5)) / (T::lit(2.0) * T::from_count(n));
        let (sin, cos) = half.sin_cos();
        grid.push(GridPoint { value: sin * sin, complement: cos * cos });
    }
    for k in 1..=REFINE_DEPTH {
        grid.push(GridPoint::from_complement(T::lit(0.5).powi(k)));
    }
    grid
}

/// Every route side by side for one `(μ, σ, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport<T> {
    pub params: OperatorParams<T>,
    pub p: LebesgueExponent<T>,
    pub closed_form: T,
    pub schur_max_ratio_right: T,
    pub schur_max_ratio_left: T,
    pub sweep_best_lower: T,
    pub nystrom_estimate: T,
    pub rel_gap_lower: T,
    pub rel_gap_nystrom: T,
    /// `σ` within [`BLOWUP_MARGIN`] of `1/p - 1`: the norm grows like
    /// `1/(σ - 1/p + 1)` and finite discretizations lag far behind.
    pub near_blowup: bool,
}

impl<T: Real> NormReport<T> {
    /// The sandwich `lower routes <= closed form (1 + tol)`.
    pub fn is_consistent(&self, tol: T) -> bool {
        let cap = self.closed_form * (T::one() + tol);
        self.schur_max_ratio_right <= cap
            && self.schur_max_ratio_left <= cap
            && self.sweep_best_lower <= cap
            && self.nystrom_estimate <= cap
    }
}

/// Settings of [`norm_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportConfig<T> {
    pub grid_size: usize,
    pub eta_min: T,
    /// Total Nyström nodes; a multiple of [`NYSTROM_PANEL`].
    pub nystrom_order: usize,
    pub power: PowerMethod,
}

impl<T: Real> Default for ReportConfig<T> {
    fn default() -> Self {
        Self { grid_size: 32, eta_min: T::lit(1e-4), nystrom_order: 128, power: PowerMethod::default() }
    }
}

/// Runs the Schur, sweep and Nyström routes against the closed form.
/// Requires `1 < p < ∞` and `σ > 1/p - 1`.
pub fn norm_report<T: Real>(
    params: OperatorParams<T>,
    p: LebesgueExponent<T>,
    cfg: ReportConfig<T>,
) -> Result<NormReport<T>> {
    let closed_form = norm_formula(params, p)?;
    let schur = schur_check(params, p, cfg.grid_size)?;
    let sweep = lower_bound_sweep(params, p, &decade_etas(cfg.eta_min))?;
    let sweep_best_lower = sweep.iter().fold(T::zero(), |m, &(_, v)| m.max(v));
    let depth = graded_depth_for_order(cfg.nystrom_order, NYSTROM_PANEL)?;
    let disc = discretize_graded(params, p, depth, NYSTROM_PANEL)?;
    let nystrom_estimate = lp_opnorm_numeric_with(&disc, cfg.power)?;
    let margin = params.sigma() - (p.p().recip() - T::one());
    Ok(NormReport {
        params,
        p,
        closed_form,
        schur_max_ratio_right: schur.max_ratio_right,
        schur_max_ratio_left: schur.max_ratio_left,
        sweep_best_lower,
        nystrom_estimate,
        rel_gap_lower: (closed_form - sweep_best_lower) / closed_form,
        rel_gap_nystrom: (closed_form - nystrom_estimate) / closed_form,
        near_blowup: margin < T::lit(BLOWUP_MARGIN),
    })
}
