//! Log-gamma, digamma, Beta and Pochhammer symbols.
//!
//! `ln_gamma` uses the Stirling series for `x >= 15`, with coefficients
//! `B_{2k} / (2k (2k-1))` for the Bernoulli numbers `B_2 .. B_16`. Below
//! that the recurrence `Γ(x+1) = xΓ(x)` moves the argument into
//! `[1.5, 2.5)`, where the Taylor expansion
//!
//! ```text
//! ln Γ(2 + u) = (1 - γ) u + Σ_{k>=2} (-1)^k (ζ(k) - 1) u^k / k
//! ```
//!
//! is summed with the fixed coefficients in [`TAYLOR_COEFFS`]. It vanishes
//! exactly at `u = 0`, which keeps relative accuracy near the zeros of
//! `ln Γ` at 1 and 2.

use crate::error::{Error, Result};
use crate::scalar::{is_nonpositive_integer, Real};

/// Arguments below this are shifted up before the Stirling series is used.
const STIRLING_MIN: f64 = 15.0;

/// `B_{2k} / (2k (2k - 1))`, k = 1..=8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// `B_{2k} / (2k)`, k = 1..=7, for the digamma asymptotic series.
const DIGAMMA_COEFFS: [f64; 7] =
    [1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0];

const DIGAMMA_MIN: f64 = 10.0;

/// `1 - γ`.
const TAYLOR_LINEAR: f64 = 0.422_784_335_098_467_1;

/// `(-1)^k (ζ(k) - 1) / k`, k = 2..=30. Truncation error below `1e-18`
/// for `|u| <= 1/2`.
const TAYLOR_COEFFS: [f64; 29] = [
    3.22467033424113203e-01,
    -6.73523010531981020e-02,
    2.05808084277845464e-02,
    -7.38555102867398568e-03,
    2.89051033074152336e-03,
    -1.19275391170326102e-03,
    5.09669524743042450e-04,
    -2.23154758453579386e-04,
    9.94575127818085310e-05,
    -4.49262367381331420e-05,
    2.05072127756706911e-05,
    -9.43948827526839672e-06,
    4.37486678990748817e-06,
    -2.03921575380136619e-06,
    9.55141213040741935e-07,
    -4.49246919876456619e-07,
    2.12071848055546646e-07,
    -1.00432248239680991e-07,
    4.76981016936398040e-08,
    -2.27110946089431635e-08,
    1.08386592148969546e-08,
    -5.18347504197004664e-09,
    2.48367454380247848e-09,
    -1.19214014058609115e-09,
    5.73136724167886225e-10,
    -2.75952288512423336e-10,
    1.33047643742444888e-10,
    -6.42296456383809960e-11,
    3.10442477473222756e-11,
];

fn taylor_near_two<T: Real>(u: T) -> T {
    let mut acc = T::zero();
    for &c in TAYLOR_COEFFS.iter().rev() {
        acc = acc * u + T::lit(c);
    }
    u * (T::lit(TAYLOR_LINEAR) + u * acc)
}

fn stirling<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let ln_sqrt_2pi = T::lit(0.918_938_533_204_672_7);
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut corr = T::zero();
    let mut pow = inv;
    for &c in STIRLING_COEFFS.iter() {
        corr = corr + T::lit(c) * pow;
        pow = pow * inv2;
    }
    (x - half) * x.ln() - x + ln_sqrt_2pi + corr
}

/// Natural logarithm of `Γ(x)` for `x > 0`.
///
/// Absolute error below `1e-13` for moderate results and relative error
/// of a few ulps once `ln Γ(x)` is large (`f64`).
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("ln_gamma", format!("argument {x} must be positive and finite")));
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos<T: Real>(x: T) -> T {
    if x >= T::lit(STIRLING_MIN) {
        return stirling(x);
    }
    let lo = T::lit(1.5);
    let hi = T::lit(2.5);
    let mut y = x;
    let mut prod = T::one();
    if y < lo {
        // ln Γ(x) = ln Γ(x + n) - ln(x (x+1) ... (x+n-1))
        while y < lo {
            prod = prod * y;
            y = y + T::one();
        }
        taylor_near_two(y - T::lit(2.0)) - prod.ln()
    } else {
        // ln Γ(x) = ln Γ(x - n) + ln((x-1) ... (x-n))
        while y >= hi {
            y = y - T::one();
            prod = prod * y;
        }
        taylor_near_two(y - T::lit(2.0)) + prod.ln()
    }
}

/// `sin(πx)` with the argument reduced to `[-1/2, 1/2]` first so that it
/// vanishes exactly at the integers.
pub(crate) fn sin_pi<T: Real>(x: T) -> T {
    let n = x.round();
    let r = x - n;
    let s = (T::PI() * r).sin();
    let odd = (n / T::lit(2.0)).fract() != T::zero();
    if odd {
        -s
    } else {
        s
    }
}

/// `ln|Γ(x)|` together with the sign of `Γ(x)`, for any real `x` that is
/// not a pole.
pub fn ln_gamma_signed<T: Real>(x: T) -> Result<(T, T)> {
    if !x.is_finite() {
        return Err(Error::domain("ln_gamma_signed", format!("argument {x} is not finite")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::domain("ln_gamma_signed", format!("pole at {x}")));
    }
    if x > T::zero() {
        return Ok((ln_gamma_pos(x), T::one()));
    }
    // Γ(x) Γ(1 - x) = π / sin(πx)
    let s = sin_pi(x);
    let ln_abs = T::PI().ln() - s.abs().ln() - ln_gamma_pos(T::one() - x);
    Ok((ln_abs, s.signum()))
}

/// Digamma function `ψ(x) = d/dx ln Γ(x)` for non-pole real `x`.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() || is_nonpositive_integer(x) {
        return Err(Error::domain("digamma", format!("argument {x} is a pole or not finite")));
    }
    if x < T::zero() {
        // ψ(1 - x) - ψ(x) = π cot(πx)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma_pos(T::one() - x) - T::PI() * cot);
    }
    Ok(digamma_pos(x))
}

fn cos_pi<T: Real>(x: T) -> T {
    sin_pi(x + T::lit(0.5))
}

fn digamma_pos<T: Real>(x: T) -> T {
    let min = T::lit(DIGAMMA_MIN);
    let mut acc = T::zero();
    let mut y = x;
    while y < min {
        acc = acc - y.recip();
        y = y + T::one();
    }
    let inv2 = (y * y).recip();
    let mut pow = inv2;
    let mut series = T::zero();
    for &c in DIGAMMA_COEFFS.iter() {
        series = series + T::lit(c) * pow;
        pow = pow * inv2;
    }
    acc + y.ln() - T::lit(0.5) / y - series
}

/// `ln B(x, y)` for `x, y > 0`.
pub fn ln_beta<T: Real>(x: T, y: T) -> Result<T> {
    if !(x > T::zero() && y > T::zero()) {
        return Err(Error::domain("beta_fn", format!("arguments ({x}, {y}) must be positive")));
    }
    Ok(ln_gamma_pos(x) + ln_gamma_pos(y) - ln_gamma_pos(x + y))
}

/// Euler Beta function `B(x, y) = Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta_fn<T: Real>(x: T, y: T) -> Result<T> {
    ln_beta(x, y).map(T::exp)
}

/// Signed ratio `Π Γ(num_i) / Π Γ(den_j)` evaluated in the log domain.
///
/// A pole in the denominator makes the ratio vanish; a pole in the numerator
/// is a domain error.
pub fn gamma_ratio<T: Real>(num: &[T], den: &[T]) -> Result<T> {
    let mut ln = T::zero();
    let mut sign = T::one();
    for &d in den {
        if is_nonpositive_integer(d) {
            return Ok(T::zero());
        }
    }
    for &x in num {
        let (l, s) = ln_gamma_signed(x).map_err(|_| Error::domain("gamma_ratio", format!("numerator pole at {x}")))?;
        ln = ln + l;
        sign = sign * s;
    }
    for &x in den {
        let (l, s) = ln_gamma_signed(x)?;
        ln = ln - l;
        sign = sign * s;
    }
    Ok(sign * ln.exp())
}

/// Above this length the Pochhammer symbol of a positive base is taken
/// from `ln Γ` instead of an explicit product.
const POCHHAMMER_LOG_MIN: usize = 32;

/// Rising factorial `(q)_k = q (q+1) ... (q+k-1)`, with `(q)_0 = 1`.
pub fn pochhammer<T: Real>(q: T, k: usize) -> T {
    if k == 0 {
        return T::one();
    }
    if q > T::zero() && k >= POCHHAMMER_LOG_MIN {
        let qk = q + T::from_count(k);
        return (ln_gamma_pos(qk) - ln_gamma_pos(q)).exp();
    }
    pochhammer_product(q, k)
}

/// Signed-product path of [`pochhammer`], used for every base.
pub fn pochhammer_product<T: Real>(q: T, k: usize) -> T {
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * (q + T::from_count(i));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    /// Independent oracle: Euler's product Γ(x) = lim n! n^x / (x (x+1) ... (x+n)),
    /// accelerated with the first terms of the known 1/n correction.
    fn ln_gamma_product_oracle(x: f64) -> f64 {
        // ln(n! n^x / (x (x+1) ... (x+n))) = x ln n - ln x - Σ_{k=1}^{n} ln(1 + x/k)
        let n = 200_000_u32;
        let mut s = 0.0;
        for k in (1..=n).rev() {
            s += (x / f64::from(k)).ln_1p();
        }
        let nf = f64::from(n);
        // Γ_n(x) = Γ(x) (1 - x(x+1)/(2n) + O(1/n^2))
        x * nf.ln() - x.ln() - s - (-x * (x + 1.0) / (2.0 * nf)).ln_1p()
    }

    #[test]
    fn ln_gamma_small_values() {
        assert!(ln_gamma(1.0_f64).unwrap().abs() < 1e-13);
        assert_relative_eq!(ln_gamma(6.0_f64).unwrap(), 120.0_f64.ln(), epsilon = 1e-13);
        assert_relative_eq!(ln_gamma(0.5_f64).unwrap(), 0.5 * PI.ln(), epsilon = 1e-13);
        assert_relative_eq!(ln_gamma(2.0_f64).unwrap(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn ln_gamma_matches_product_oracle() {
        for &x in &[0.5, 0.75, 1.3, 2.5] {
            let oracle = ln_gamma_product_oracle(x);
            assert!((ln_gamma(x).unwrap() - oracle).abs() < 1e-8, "x = {x}");
        }
        // oracle is only good to ~1e-9, the frozen value comes from it
        assert!((ln_gamma_product_oracle(0.5) - 0.572_364_942_9).abs() < 1e-9);
    }

    #[test]
    fn ln_gamma_extremes() {
        // Γ(x) ~ 1/x - γ near zero
        let x = 1e-6_f64;
        let expected = -(x.ln()) - 0.577_215_664_901_532_9 * x;
        assert!((ln_gamma(x).unwrap() - expected).abs() < 1e-11);
        // Stirling leading terms dominate at 1e6
        let big = 1e6_f64;
        let approx = (big - 0.5) * big.ln() - big + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * big);
        assert_relative_eq!(ln_gamma(big).unwrap(), approx, max_relative = 1e-15);
        assert!(ln_gamma(0.0_f64).is_err());
        assert!(ln_gamma(-1.5_f64).is_err());
    }

    #[test]
    fn reflection_formula() {
        for i in 1..50 {
            let x = i as f64 / 50.0;
            let g = ln_gamma(x).unwrap() + ln_gamma(1.0 - x).unwrap();
            let v = g.exp() * sin_pi(x) / PI;
            assert!((v - 1.0).abs() < 1e-12, "x = {x}: {v}");
        }
    }

    #[test]
    fn signed_gamma_negative_arguments() {
        // Γ(-0.5) = -2√π
        let (l, s) = ln_gamma_signed(-0.5_f64).unwrap();
        assert_eq!(s, -1.0);
        assert_relative_eq!(l.exp(), 2.0 * PI.sqrt(), max_relative = 1e-14);
        // Γ(-1.5) = 4√π/3
        let (l, s) = ln_gamma_signed(-1.5_f64).unwrap();
        assert_eq!(s, 1.0);
        assert_relative_eq!(l.exp(), 4.0 * PI.sqrt() / 3.0, max_relative = 1e-14);
        assert!(ln_gamma_signed(-2.0_f64).is_err());
    }

    #[test]
    fn digamma_values() {
        let euler_gamma = 0.577_215_664_901_532_9_f64;
        assert_relative_eq!(digamma(1.0_f64).unwrap(), -euler_gamma, max_relative = 1e-14);
        assert_relative_eq!(digamma(0.5_f64).unwrap(), -euler_gamma - 2.0 * 2.0_f64.ln(), max_relative = 1e-14);
        // ψ(x+1) = ψ(x) + 1/x across zero
        for &x in &[-2.7_f64, -0.3, 0.2, 3.3] {
            let lhs = digamma(x + 1.0).unwrap();
            let rhs = digamma(x).unwrap() + 1.0 / x;
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()), "x = {x}");
        }
        assert!(digamma(-3.0_f64).is_err());
    }

    #[test]
    fn beta_values() {
        assert_relative_eq!(beta_fn(1.0_f64, 1.0).unwrap(), 1.0, epsilon = 1e-13);
        assert_relative_eq!(beta_fn(0.5_f64, 0.5).unwrap(), PI, max_relative = 1e-13);
        assert_relative_eq!(beta_fn(2.0_f64, 3.0).unwrap(), 1.0 / 12.0, max_relative = 1e-13);
        assert!(beta_fn(0.0_f64, 1.0).is_err());
    }

    #[test]
    fn gamma_ratio_handles_poles() {
        assert_eq!(gamma_ratio(&[1.5_f64], &[-2.0]).unwrap(), 0.0);
        assert!(gamma_ratio(&[-1.0_f64], &[2.0]).is_err());
        // Γ(0.5)Γ(0.5)/Γ(1) = π
        assert_relative_eq!(gamma_ratio(&[0.5_f64, 0.5], &[1.0]).unwrap(), PI, max_relative = 1e-13);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.7_f64, 0), 1.0);
        assert_eq!(pochhammer(2.0_f64, 3), 24.0);
        assert_eq!(pochhammer(0.5_f64, 2), 0.75);
        assert_eq!(pochhammer(-3.0_f64, 5), 0.0);
        // log path agrees with the product path
        let direct = pochhammer_product(1.25_f64, 60);
        assert_relative_eq!(pochhammer(1.25_f64, 60), direct, max_relative = 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        assert!((ln_gamma(0.5_f32).unwrap() - 0.572_364_9).abs() < 2e-5);
        assert!((beta_fn(2.0_f32, 3.0).unwrap() - 1.0 / 12.0).abs() < 1e-5);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn pochhammer_recurrence_exact(q in -5.0_f64..5.0, k in 0_usize..25) {
                let lhs = pochhammer_product(q, k + 1);
                let rhs = pochhammer_product(q, k) * (q + k as f64);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn ln_gamma_recurrence(x in 1e-3_f64..50.0) {
                let lhs = ln_gamma(x + 1.0).unwrap();
                let rhs = ln_gamma(x).unwrap() + x.ln();
                prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
            }
        }
    }
}
