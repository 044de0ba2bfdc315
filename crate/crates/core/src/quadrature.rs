//! Gauss–Jacobi quadrature on `(0, 1)` for weights `t^α (1-t)^β`.
//!
//! [`JacobiRule`] is the classical Golub–Welsch construction. [`GradedRule`]
//! is a composite rule for the same weight whose panels shrink
//! geometrically toward `t = 1`; it resolves integrands with a
//! near-singularity just beyond the right endpoint, such as
//! `₂F₁(λ, λ; μ; s t)` for `s` close to 1.
//!
//! Every rule also stores the node complements `1 - t` computed without
//! cancellation, which the kernel evaluations rely on.

use crate::eigen::tridiagonal_eigenvalues;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::ln_beta;

/// Default rule order for single integrals.
pub const DEFAULT_ORDER: usize = 64;
/// Order used by the identity verification suites.
pub const IDENTITY_ORDER: usize = 128;

/// Nodes, complements and weights of a rule for `∫₀¹ t^α (1-t)^β f(t) dt`.
pub trait Quadrature<T: Real> {
    fn nodes(&self) -> &[T];
    fn complements(&self) -> &[T];
    fn weights(&self) -> &[T];

    fn len(&self) -> usize {
        self.nodes().len()
    }

    fn is_empty(&self) -> bool {
        self.nodes().is_empty()
    }

    fn integrate<F: Fn(T) -> T>(&self, f: F) -> T {
        self.nodes().iter().zip(self.weights()).fold(T::zero(), |acc, (&t, &w)| acc + w * f(t))
    }

    /// Integrates `f(t, 1 - t)`.
    fn integrate_with_complement<F: Fn(T, T) -> T>(&self, f: F) -> T {
        let mut acc = T::zero();
        for i in 0..self.len() {
            acc = acc + self.weights()[i] * f(self.nodes()[i], self.complements()[i]);
        }
        acc
    }

    /// Fallible variant of [`Quadrature::integrate_with_complement`].
    fn try_integrate<F: FnMut(T, T) -> Result<T>>(&self, mut f: F) -> Result<T> {
        let mut acc = T::zero();
        for i in 0..self.len() {
            acc = acc + self.weights()[i] * f(self.nodes()[i], self.complements()[i])?;
        }
        Ok(acc)
    }
}

fn check_exponents<T: Real>(op: &'static str, alpha: T, beta: T) -> Result<()> {
    if !(alpha > -T::one() && alpha.is_finite()) {
        return Err(Error::domain(op, format!("alpha = {alpha} must exceed -1")));
    }
    if !(beta > -T::one() && beta.is_finite()) {
        return Err(Error::domain(op, format!("beta = {beta} must exceed -1")));
    }
    Ok(())
}

/// Gauss–Jacobi rule for `t^alpha (1-t)^beta` on `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule<T> {
    pub alpha: T,
    pub beta: T,
    pub order: usize,
    nodes: Vec<T>,
    complements: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> JacobiRule<T> {
    /// Builds the rule from the eigenvalues of the Jacobi matrix of the
    /// weight, mapped from `(-1, 1)` to `(0, 1)`.
    ///
    /// Weights come from `μ₀ / Σ_k p_k(t_i)²` with the orthonormal
    /// polynomials `p_k`, which keeps small endpoint weights accurate.
    pub fn new(alpha: T, beta: T, order: usize) -> Result<Self> {
        check_exponents("make_jacobi_rule", alpha, beta)?;
        if order == 0 {
            return Err(Error::domain("make_jacobi_rule", "order must be at least 1"));
        }
        // Nodes in the right half come from the reflected rule in y = 1 - t,
        // so both t and 1 - t are accurate to working precision.
        let (left_nodes, left_weights) = small_side(alpha, beta, order)?;
        let (right_nodes, right_weights) = small_side(beta, alpha, order)?;
        let split = order.div_ceil(2);
        let mut nodes = Vec::with_capacity(order);
        let mut complements = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for i in 0..split {
            nodes.push(left_nodes[i]);
            complements.push(T::one() - left_nodes[i]);
            weights.push(left_weights[i]);
        }
        for i in split..order {
            let y = right_nodes[order - 1 - i];
            nodes.push(T::one() - y);
            complements.push(y);
            weights.push(right_weights[order - 1 - i]);
        }
        Ok(Self { alpha, beta, order, nodes, complements, weights })
    }
}

impl<T: Real> Quadrature<T> for JacobiRule<T> {
    fn nodes(&self) -> &[T] {
        &self.nodes
    }
    fn complements(&self) -> &[T] {
        &self.complements
    }
    fn weights(&self) -> &[T] {
        &self.weights
    }
}

/// Free-function form of [`JacobiRule::new`].
pub fn make_jacobi_rule<T: Real>(alpha: T, beta: T, order: usize) -> Result<JacobiRule<T>> {
    JacobiRule::new(alpha, beta, order)
}

/// Nodes (ascending) and weights of the rule, accurate near `t = 0`.
fn small_side<T: Real>(alpha: T, beta: T, order: usize) -> Result<(Vec<T>, Vec<T>)> {
    let (diag, off) = recurrence(alpha, beta, order + 1);
    let nodes: Vec<T> = tridiagonal_eigenvalues(&diag[..order], &off[..order - 1])?
        .into_iter()
        .map(|t| newton_polish(t, &diag, &off, order))
        .collect();
    let mu0 = ln_beta(alpha + T::one(), beta + T::one())?.exp();
    let weights = nodes
        .iter()
        .map(|&t| {
            let mut prev = T::zero();
            let mut cur = T::one();
            let mut sum = T::one();
            for k in 0..order - 1 {
                let b_prev = if k == 0 { T::zero() } else { off[k - 1] };
                let next = ((t - diag[k]) * cur - b_prev * prev) / off[k];
                prev = cur;
                cur = next;
                sum = sum + cur * cur;
            }
            mu0 / sum
        })
        .collect();
    Ok((nodes, weights))
}

/// Two Newton steps on `p_n` from the eigenvalue estimate, which
/// restores relative accuracy of nodes very close to 0.
fn newton_polish<T: Real>(t0: T, diag: &[T], off: &[T], n: usize) -> T {
    let mut t = t0;
    for _ in 0..2 {
        let (mut p_prev, mut p) = (T::zero(), T::one());
        let (mut d_prev, mut d) = (T::zero(), T::zero());
        for k in 0..n {
            let b_prev = if k == 0 { T::zero() } else { off[k - 1] };
            let p_next = ((t - diag[k]) * p - b_prev * p_prev) / off[k];
            let d_next = (p + (t - diag[k]) * d - b_prev * d_prev) / off[k];
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
        }
        if d == T::zero() || !p.is_finite() || !d.is_finite() {
            return t;
        }
        let step = p / d;
        let next = t - step;
        if !(next > T::zero() && next < T::one()) || step.abs() > T::lit(0.5) * t.min(T::one() - t) {
            return t;
        }
        t = next;
    }
    t
}

/// Jacobi matrix of `t^alpha (1-t)^beta` on `(0, 1)`: diagonal and
/// off-diagonal of the orthonormal three-term recurrence.
fn recurrence<T: Real>(alpha: T, beta: T, order: usize) -> (Vec<T>, Vec<T>) {
    // On (-1, 1) with weight (1-x)^a (1+x)^b and x = 2t - 1: a = beta, b = alpha.
    let (a, b) = (beta, alpha);
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let ab = a + b;
    let mut diag = Vec::with_capacity(order);
    let mut off = Vec::with_capacity(order.saturating_sub(1));
    for n in 0..order {
        let nf = T::from_count(n);
        let x_diag = if n == 0 {
            (b - a) / (ab + two)
        } else {
            let s = two * nf + ab;
            (b * b - a * a) / (s * (s + two))
        };
        diag.push((one + x_diag) / two);
    }
    for n in 1..order {
        let nf = T::from_count(n);
        let beta_n = if n == 1 {
            four * (one + a) * (one + b) / ((two + ab) * (two + ab) * (T::lit(3.0) + ab))
        } else {
            let s = two * nf + ab;
            four * nf * (nf + a) * (nf + b) * (nf + ab) / (s * s * (s + one) * (s - one))
        };
        off.push(beta_n.sqrt() / two);
    }
    (diag, off)
}

/// Composite rule for `t^alpha (1-t)^beta` on `(0, 1)`, graded
/// geometrically toward `t = 1`.
///
/// Panels: `[0, 1/2]` carries the `t^alpha` factor in a Jacobi rule; the
/// panels `1 - t ∈ [2^{-k-1}, 2^{-k}]`, `k = 1 .. depth-1`, use
/// Gauss–Legendre with the weight evaluated pointwise; the last panel
/// `1 - t ∈ [0, 2^{-depth}]` carries `(1-t)^beta` in a Jacobi rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedRule<T> {
    pub alpha: T,
    pub beta: T,
    pub depth: usize,
    pub per_panel: usize,
    nodes: Vec<T>,
    complements: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GradedRule<T> {
    pub fn new(alpha: T, beta: T, depth: usize, per_panel: usize) -> Result<Self> {
        check_exponents("graded_rule", alpha, beta)?;
        if depth == 0 || per_panel == 0 {
            return Err(Error::domain("graded_rule", "depth and per-panel order must be at least 1"));
        }
        if depth > max_depth::<T>() {
            return Err(Error::domain("graded_rule", format!("depth {depth} exceeds {}", max_depth::<T>())));
        }
        let half = T::lit(0.5);
        let one = T::one();
        let mut pts: Vec<(T, T, T)> = Vec::with_capacity(depth * per_panel + per_panel);

        let left = JacobiRule::new(alpha, T::zero(), per_panel)?;
        let scale = half.powf(alpha + one);
        for (&u, &w) in left.nodes().iter().zip(left.weights()) {
            let t = u * half;
            let tc = one - t;
            pts.push((t, tc, scale * w * tc.powf(beta)));
        }

        if depth > 1 {
            let legendre = JacobiRule::new(T::zero(), T::zero(), per_panel)?;
            for k in 1..depth {
                let h = half.powi(k as i32);
                let lo = h * half;
                for (&u, &w) in legendre.nodes().iter().zip(legendre.weights()) {
                    let y = lo + lo * u;
                    let t = one - y;
                    pts.push((t, y, lo * w * t.powf(alpha) * y.powf(beta)));
                }
            }
        }

        let right = JacobiRule::new(beta, T::zero(), per_panel)?;
        let h = half.powi(depth as i32);
        let scale = h.powf(beta + one);
        for (&v, &w) in right.nodes().iter().zip(right.weights()) {
            let y = h * v;
            let t = one - y;
            pts.push((t, y, scale * w * t.powf(alpha)));
        }

        pts.sort_by(|p, q| q.1.partial_cmp(&p.1).expect("finite nodes"));
        let nodes = pts.iter().map(|p| p.0).collect();
        let complements = pts.iter().map(|p| p.1).collect();
        let weights = pts.iter().map(|p| p.2).collect();
        Ok(Self { alpha, beta, depth, per_panel, nodes, complements, weights })
    }

    /// A rule whose last panel is no wider than `delta / 2`, so that a
    /// singularity at distance `delta` beyond `t = 1` is resolved.
    pub fn resolving(alpha: T, beta: T, delta: T, per_panel: usize) -> Result<Self> {
        Self::new(alpha, beta, depth_for(delta), per_panel)
    }

    /// Total number of nodes.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

impl<T: Real> Quadrature<T> for GradedRule<T> {
    fn nodes(&self) -> &[T] {
        &self.nodes
    }
    fn complements(&self) -> &[T] {
        &self.complements
    }
    fn weights(&self) -> &[T] {
        &self.weights
    }
}

/// Deepest admissible grading for the scalar type.
pub fn max_depth<T: Real>() -> usize {
    let min = T::min_positive_value().to_f64_lossy();
    ((-min.log2()).floor() as usize).saturating_sub(4)
}

/// Panel depth that puts the last panel within `delta / 2` of `t = 1`.
pub fn depth_for<T: Real>(delta: T) -> usize {
    let d = delta.to_f64_lossy();
    if !(d > 0.0) {
        return max_depth::<T>();
    }
    let k = (-d.log2()).ceil().max(0.0) as usize + 1;
    k.clamp(1, max_depth::<T>())
}

/// `∫ f dμ` against `μ t^{μ-1} (1-t)^σ dt` using a Jacobi rule with
/// `alpha = μ - 1`, `beta = σ`.
pub fn integrate_weighted<T: Real, F: Fn(T) -> T>(f: F, mu: T, sigma: T, rule_order: usize) -> Result<T> {
    if !(mu > T::zero()) {
        return Err(Error::domain("integrate_weighted", format!("mu = {mu} must be positive")));
    }
    let rule = JacobiRule::new(mu - T::one(), sigma, rule_order)?;
    Ok(mu * rule.integrate(f))
}

/// Fallible-integrand form of [`integrate_weighted`].
pub fn try_integrate_weighted<T: Real, F: FnMut(T, T) -> Result<T>>(
    f: F,
    mu: T,
    sigma: T,
    rule_order: usize,
) -> Result<T> {
    if !(mu > T::zero()) {
        return Err(Error::domain("integrate_weighted", format!("mu = {mu} must be positive")));
    }
    let rule = JacobiRule::new(mu - T::one(), sigma, rule_order)?;
    Ok(mu * rule.try_integrate(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{beta_fn, hyp2f1_abcz};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn two_point_legendre_is_cubic_exact() {
        let rule = JacobiRule::new(0.0_f64, 0.0, 2).unwrap();
        assert_relative_eq!(rule.integrate(|t| t * t), 1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(rule.integrate(|t| t * t * t), 0.25, max_relative = 1e-14);
    }

    #[test]
    fn weight_sum_is_beta() {
        let rule = JacobiRule::new(0.5_f64, 0.5, 8).unwrap();
        let sum: f64 = rule.weights().iter().sum();
        let oracle = beta_fn(1.5, 1.5).unwrap();
        assert_relative_eq!(oracle, PI / 8.0, max_relative = 1e-14);
        assert_relative_eq!(sum, oracle, max_relative = 1e-13);
        let rule = JacobiRule::new(2.0_f64, 0.0, 16).unwrap();
        assert_relative_eq!(rule.integrate(|_| 1.0), 1.0 / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn structural_invariants() {
        for &(a, b, n) in &[(0.0, 0.0, 1), (-0.9, 2.5, 17), (3.0, -0.5, 64), (-0.99, -0.99, 200)] {
            let rule = JacobiRule::new(a, b, n).unwrap();
            assert_eq!(rule.len(), n);
            assert!(rule.nodes().windows(2).all(|p| p[0] < p[1]));
            assert!(rule.nodes().iter().all(|&t| t > 0.0 && t < 1.0));
            assert!(rule.weights().iter().all(|&w| w > 0.0));
            let sum: f64 = rule.weights().iter().sum();
            // weight error grows like n² eps through the node error
            assert!((sum - beta_fn(a + 1.0, b + 1.0).unwrap()).abs() < 1e-11 * sum.max(1.0));
        }
    }

    #[test]
    fn polynomial_exactness() {
        // ∫ t^{a+k} (1-t)^b = B(a+k+1, b+1) for k < 2n
        let (a, b, n) = (0.3, -0.4, 10);
        let rule = JacobiRule::new(a, b, n).unwrap();
        for k in 0..2 * n {
            let got = rule.integrate(|t: f64| t.powi(k as i32));
            let expected = beta_fn(a + k as f64 + 1.0, b + 1.0).unwrap();
            assert_relative_eq!(got, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn reflected_rule_mirrors_complements() {
        let rule = JacobiRule::new(-0.3_f64, 1.7, 40).unwrap();
        let mirror = JacobiRule::new(1.7_f64, -0.3, 40).unwrap();
        for i in 0..40 {
            let (c, m) = (rule.complements()[i], mirror.nodes()[39 - i]);
            assert!((c - m).abs() <= 4.0 * f64::EPSILON * m, "{i}: {c} vs {m}");
            assert_relative_eq!(rule.weights()[i], mirror.weights()[39 - i], max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(JacobiRule::new(-1.0_f64, 0.0, 4).is_err());
        assert!(JacobiRule::new(0.0_f64, -1.5, 4).is_err());
        assert!(JacobiRule::new(0.0_f64, 0.0, 0).is_err());
        assert!(GradedRule::new(0.0_f64, -1.0, 3, 4).is_err());
    }

    #[test]
    fn normalized_measure() {
        assert_relative_eq!(integrate_weighted(|_| 1.0, 2.5_f64, 0.0, 32).unwrap(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(integrate_weighted(|_| 1.0, 1.0_f64, 1.0, 32).unwrap(), 0.5, max_relative = 1e-13);
    }

    #[test]
    fn euler_integral_example() {
        // μ=1, σ=1: ∫ (1-t) ₂F₁(1.5,1.5;1;0.25t) dt = Γ(1)Γ(2)/Γ(3) ₂F₁(1.5,1.5;3;0.25)
        let num = integrate_weighted(|t| hyp2f1_abcz(1.5, 1.5, 1.0, 0.25 * t).unwrap(), 1.0_f64, 1.0, 64).unwrap();
        let closed = 0.5 * hyp2f1_abcz(1.5, 1.5, 3.0, 0.25).unwrap();
        assert!((num - closed).abs() < 1e-9 * closed);
    }

    #[test]
    fn graded_rule_matches_beta_moments() {
        let (a, b) = (0.7_f64, -0.6);
        let rule = GradedRule::new(a, b, 20, 12).unwrap();
        assert!(rule.nodes().windows(2).all(|p| p[0] < p[1]));
        assert!(rule.weights().iter().all(|&w| w > 0.0));
        for k in 0..6 {
            let got = rule.integrate(|t| t.powi(k));
            let expected = beta_fn(a + k as f64 + 1.0, b + 1.0).unwrap();
            assert_relative_eq!(got, expected, max_relative = 1e-13);
        }
        for (t, c) in rule.nodes().iter().zip(rule.complements()) {
            assert!((t + c - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn graded_rule_resolves_near_singularity() {
        // ∫₀¹ dt / (δ + 1 - t) = ln((1+δ)/δ)
        let delta = 2f64.powi(-40);
        let rule = GradedRule::resolving(0.0, 0.0, delta, 16).unwrap();
        let got = rule.integrate_with_complement(|_, c| 1.0 / (delta + c));
        assert_relative_eq!(got, ((1.0 + delta) / delta).ln(), max_relative = 1e-12);
    }

    #[test]
    fn order_doubling_is_stable() {
        let f = |t: f64| hyp2f1_abcz(1.2, 0.8, 2.0, 0.6 * t).unwrap();
        let a = integrate_weighted(f, 1.5, 0.3, 64).unwrap();
        let b = integrate_weighted(f, 1.5, 0.3, 128).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs());
    }
}
