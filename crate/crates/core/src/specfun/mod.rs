//! Scalar special functions: log-gamma, Beta, Pochhammer symbols and the
//! Gauss hypergeometric function, plus the boundedness classification of
//! `₂F₁(x, x; y; r)` on `(0, 1)`.

mod gamma;
mod hyp2f1;

pub use gamma::{beta_fn, digamma, gamma_ratio, ln_beta, ln_gamma, ln_gamma_signed, pochhammer, pochhammer_product};
pub use hyp2f1::{hyp2f1, hyp2f1_abcz, hyp2f1_at_one, hyp2f1_complement, hyp2f1_series, HypArgs, MAX_TERMS};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Supremum of `r ↦ ₂F₁(x, x; y; r)` over `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagSup<T> {
    /// `y > 2x`: the supremum is the value at `r = 1`.
    Bounded(T),
    /// `y = 2x`: grows like `coefficient · ln(1/(1-r))`.
    Logarithmic { coefficient: T },
    /// `y < 2x`: grows like `coefficient · (1-r)^{-exponent}`.
    Power { exponent: T, coefficient: T },
}

impl<T: Real> DiagSup<T> {
    pub fn is_bounded(&self) -> bool {
        matches!(self, DiagSup::Bounded(_))
    }
}

/// Classifies `sup_{r∈(0,1)} ₂F₁(x, x; y; r)` for `y > 0`.
///
/// `y` equal to `2x` within `tie` (absolute) counts as the logarithmic case.
pub fn diag_sup<T: Real>(x: T, y: T) -> Result<DiagSup<T>> {
    diag_sup_with_tolerance(x, y, T::epsilon() * T::lit(16.0) * (T::one() + y.abs()))
}

pub fn diag_sup_with_tolerance<T: Real>(x: T, y: T, tie: T) -> Result<DiagSup<T>> {
    if !(y > T::zero()) {
        return Err(Error::domain("diag_sup", format!("y = {y} must be positive")));
    }
    let gap = y - (x + x);
    if gap.abs() <= tie {
        let two_x = x + x;
        let coefficient = gamma_ratio(&[two_x], &[x, x])?;
        return Ok(DiagSup::Logarithmic { coefficient });
    }
    if gap > T::zero() {
        return Ok(DiagSup::Bounded(gamma_ratio(&[y, gap], &[y - x, y - x])?));
    }
    let exponent = -gap;
    let coefficient = gamma_ratio(&[y, exponent], &[x, x])?;
    Ok(DiagSup::Power { exponent, coefficient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn diag_sup_cases() {
        assert_eq!(diag_sup(0.0_f64, 3.0).unwrap(), DiagSup::Bounded(1.0));
        match diag_sup(0.5_f64, 2.0).unwrap() {
            DiagSup::Bounded(v) => assert!((v - 4.0 / PI).abs() < 1e-13),
            other => panic!("{other:?}"),
        }
        match diag_sup(1.0_f64, 2.0).unwrap() {
            DiagSup::Logarithmic { coefficient } => assert!((coefficient - 1.0).abs() < 1e-14),
            other => panic!("{other:?}"),
        }
        match diag_sup(1.5_f64, 2.0).unwrap() {
            DiagSup::Power { exponent, coefficient } => {
                assert!((exponent - 1.0).abs() < 1e-15);
                // Γ(2)Γ(1)/Γ(1.5)² = 4/π
                assert!((coefficient - 4.0 / PI).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        assert!(diag_sup(1.0_f64, 0.0).is_err());
    }

    #[test]
    fn logarithmic_growth_constant() {
        // ₂F₁(1,1;2;r) = -ln(1-r)/r: ratio to ln(1/(1-r)) tends to Γ(2)/Γ(1)² = 1
        let w = 1e-12_f64;
        let v = hyp2f1_complement(1.0, 1.0, 2.0, w).unwrap();
        assert!((v / (1.0 / w).ln() - 1.0).abs() < 1e-10);
    }
}
