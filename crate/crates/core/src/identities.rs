//! Randomized verification of the `₂F₁` identities the norm computations
//! rest on. Each check draws parameters from a seeded generator, evaluates
//! both sides by independent routes and records the worst relative error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::quadrature::{GradedRule, JacobiRule, Quadrature, IDENTITY_ORDER};
use crate::scalar::Real;
use crate::specfun::{gamma_ratio, hyp2f1_abcz, hyp2f1_complement, hyp2f1_series};

/// Default number of draws per identity.
pub const DEFAULT_DRAWS: usize = 100;
/// Relative tolerance of the identity suites.
pub const IDENTITY_TOL: f64 = 1e-7;

/// Worst case over the draws of one identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub draws: usize,
    pub max_rel_error: f64,
    /// Parameters of the worst draw, by name.
    pub worst: Vec<(&'static str, f64)>,
    /// Both sides at the worst draw.
    pub worst_lhs: f64,
    pub worst_rhs: f64,
}

impl IdentityCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rel_error <= tol
    }
}

type Worst = (f64, Vec<(&'static str, f64)>, f64, f64);

struct Tracker {
    name: &'static str,
    draws: usize,
    best: Option<Worst>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Self { name, draws: 0, best: None }
    }

    fn record(&mut self, params: Vec<(&'static str, f64)>, lhs: f64, rhs: f64) {
        self.draws += 1;
        let err = rel_error(lhs, rhs);
        if self.best.as_ref().is_none_or(|b| err > b.0 || err.is_nan()) {
            self.best = Some((err, params, lhs, rhs));
        }
    }

    fn finish(self) -> IdentityCheck {
        let (max_rel_error, worst, worst_lhs, worst_rhs) = self.best.unwrap_or((0.0, Vec::new(), 0.0, 0.0));
        IdentityCheck { name: self.name, draws: self.draws, max_rel_error, worst, worst_lhs, worst_rhs }
    }
}

/// `|lhs - rhs| / |rhs|`, NaN-propagating.
pub fn rel_error(lhs: f64, rhs: f64) -> f64 {
    if lhs == rhs {
        return 0.0;
    }
    (lhs - rhs).abs() / rhs.abs()
}

fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

/// Euler formula
/// `Γ(c)/(Γ(d)Γ(c-d)) ∫₀¹ t^{d-1} (1-t)^{c-d-1} ₂F₁(a, b; d; t z) dt = ₂F₁(a, b; c; z)`
/// for `c > d > 0`, `z ∈ [0, 0.9]`.
pub fn euler_formula<T: Real>(draws: usize, seed: u64) -> Result<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut track = Tracker::new("euler_formula");
    for _ in 0..draws {
        let a = rng.gen_range(0.1..3.0);
        let b = rng.gen_range(-1.5..3.0);
        let d = rng.gen_range(0.2..3.0);
        let c = d + rng.gen_range(0.2..3.0);
        let z = rng.gen_range(0.0..0.9);
        let (ta, tb, tc, td, tz) = (lit::<T>(a), lit::<T>(b), lit::<T>(c), lit::<T>(d), lit::<T>(z));
        let rule = JacobiRule::new(td - T::one(), tc - td - T::one(), IDENTITY_ORDER)?;
        let integral = rule.try_integrate(|t, _| hyp2f1_abcz(ta, tb, td, t * tz))?;
        let lhs = gamma_ratio(&[tc], &[td, tc - td])? * integral;
        let rhs = hyp2f1_abcz(ta, tb, tc, tz)?;
        track.record(vec![("a", a), ("b", b), ("c", c), ("d", d), ("z", z)], lhs.to_f64_lossy(), rhs.to_f64_lossy());
    }
    Ok(track.finish())
}

/// Euler transform `₂F₁(a, b; c; z) = (1-z)^{c-a-b} ₂F₁(c-a, c-b; c; z)`,
/// both sides by the plain power series.
pub fn euler_transform<T: Real>(draws: usize, seed: u64) -> Result<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut track = Tracker::new("euler_transform");
    for _ in 0..draws {
        let a = rng.gen_range(0.1..3.0);
        let b = rng.gen_range(0.1..3.0);
        let c = rng.gen_range(0.2..4.0);
        let z = rng.gen_range(0.0..0.9);
        let (ta, tb, tc, tz) = (lit::<T>(a), lit::<T>(b), lit::<T>(c), lit::<T>(z));
        let lhs = hyp2f1_series(ta, tb, tc, tz)?;
        let rhs = (T::one() - tz).powf(tc - ta - tb) * hyp2f1_series(tc - ta, tc - tb, tc, tz)?;
        track.record(vec![("a", a), ("b", b), ("c", c), ("z", z)], lhs.to_f64_lossy(), rhs.to_f64_lossy());
    }
    Ok(track.finish())
}

/// Partial sums of the series at `z = 1` for the first `n` terms.
fn partial_sums_at_one(a: f64, b: f64, c: f64, checkpoints: &[usize]) -> Vec<f64> {
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut term = 1.0_f64;
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut k = 0usize;
    for &n in checkpoints {
        while k < n {
            // Kahan summation keeps the long positive sums accurate
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            let kf = k as f64;
            term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
            k += 1;
        }
        out.push(sum);
    }
    out
}

/// Limit of partial sums `S_N = S - N^{-m} (c₀ + c₁/N + ...)` from
/// `S_N, S_{2N}, ..., S_{16N}` by Richardson elimination of the exponents
/// `m, m+1, m+2, m+3`.
pub fn richardson_at_one(a: f64, b: f64, c: f64, base: usize) -> f64 {
    let m = c - a - b;
    let levels: Vec<usize> = (0..5).map(|j| base << j).collect();
    let mut s = partial_sums_at_one(a, b, c, &levels);
    for j in 0..4 {
        let r = 2f64.powf(m + j as f64);
        s = s.windows(2).map(|w| (r * w[1] - w[0]) / (r - 1.0)).collect();
    }
    s[0]
}

/// Gauss summation `₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b))` against
/// the extrapolated partial sums, for `a, b ∈ (0, 2]`, `c - a - b ∈ [0.1, 3]`.
pub fn gauss_summation<T: Real>(draws: usize, seed: u64) -> Result<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut track = Tracker::new("gauss_summation");
    for _ in 0..draws {
        let a = rng.gen_range(0.05..2.0);
        let b = rng.gen_range(0.05..2.0);
        let m = rng.gen_range(0.1..3.0);
        let c = a + b + m;
        let lhs = richardson_at_one(a, b, c, 2000);
        let (ta, tb, tc) = (lit::<T>(a), lit::<T>(b), lit::<T>(c));
        let rhs = gamma_ratio(&[tc, tc - ta - tb], &[tc - ta, tc - tb])?;
        track.record(vec![("a", a), ("b", b), ("c", c)], lhs, rhs.to_f64_lossy());
    }
    Ok(track.finish())
}

/// `∫₀¹ t^{c-1} (1-t)^{d-1} ₂F₁(a, b; c; t) dt = Γ(c)Γ(d)Γ(c+d-a-b) / (Γ(c+d-a)Γ(c+d-b))`
/// for `c, d > 0`, `c + d - a - b > 1/4`.
pub fn liu_zhou<T: Real>(draws: usize, seed: u64) -> Result<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut track = Tracker::new("liu_zhou");
    while track.draws < draws {
        let a = rng.gen_range(0.1..3.0);
        let b = rng.gen_range(0.1..3.0);
        let c = rng.gen_range(0.2..3.0);
        let d = rng.gen_range(0.2..3.0);
        if c + d - a - b <= 0.25 {
            continue;
        }
        let (ta, tb, tc, td) = (lit::<T>(a), lit::<T>(b), lit::<T>(c), lit::<T>(d));
        let lhs = liu_zhou_integral(ta, tb, tc, td)?;
        let s = tc + td;
        let rhs = gamma_ratio(&[tc, td, s - ta - tb], &[s - ta, s - tb])?;
        track.record(vec![("a", a), ("b", b), ("c", c), ("d", d)], lhs.to_f64_lossy(), rhs.to_f64_lossy());
    }
    Ok(track.finish())
}

/// Panels of the graded rule for the left side of the Liu–Zhou identity.
/// The last panel carries `(1-t)^{d-1}` only, so it has to be small enough
/// for the `(1-t)^{c+d-a-b-1}` part to be negligible there.
const LIU_ZHOU_DEPTH: usize = 120;

/// `∫₀¹ t^{c-1} (1-t)^{d-1} ₂F₁(a, b; c; t) dt` on a graded rule.
pub fn liu_zhou_integral<T: Real>(a: T, b: T, c: T, d: T) -> Result<T> {
    let depth = LIU_ZHOU_DEPTH.min(crate::quadrature::max_depth::<T>());
    let rule = GradedRule::new(c - T::one(), d - T::one(), depth, 12)?;
    rule.try_integrate(|_, tc| hyp2f1_complement(a, b, c, tc))
}

/// All four identities with the given draw count, seeds derived from `seed`.
pub fn run_all<T: Real>(draws: usize, seed: u64) -> Result<Vec<IdentityCheck>> {
    Ok(vec![
        euler_formula::<T>(draws, seed)?,
        euler_transform::<T>(draws, seed.wrapping_add(1))?,
        gauss_summation::<T>(draws, seed.wrapping_add(2))?,
        liu_zhou::<T>(draws, seed.wrapping_add(3))?,
    ])
}
