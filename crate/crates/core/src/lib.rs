//! Norms of the hypergeometric integral operator
//!
//! ```text
//! F_σ φ(s) = μ ∫₀¹ (1-t)^σ ₂F₁(λ, λ; μ; s t) φ(t) t^{μ-1} dt,   λ = (μ + σ + 1)/2
//! ```
//!
//! on `L^p_μ(0, 1)`, together with its unit-ball consequences for the
//! Forelli–Rudin operators, the Bergman projection and the Berezin
//! transform.
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar type.
//!
//! ```
//! use hypop_core::operator::{norm_formula, LebesgueExponent, OperatorParams};
//!
//! let op = OperatorParams::new(1.0_f64, 0.0).unwrap();
//! let p = LebesgueExponent::new(2.0).unwrap();
//! let norm = norm_formula(op, p).unwrap();
//! assert!((norm - std::f64::consts::PI).abs() < 1e-12);
//! ```

// Negated comparisons are deliberate: they reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod ball;
pub mod eigen;
pub mod error;
pub mod identities;
pub mod normest;
pub mod operator;
pub mod quadrature;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type OperatorParamsF64 = operator::OperatorParams<f64>;
pub type OperatorParamsF32 = operator::OperatorParams<f32>;
pub type LebesgueExponentF64 = operator::LebesgueExponent<f64>;
pub type LebesgueExponentF32 = operator::LebesgueExponent<f32>;
pub type DiscretizedOperatorF64 = operator::DiscretizedOperator<f64>;
pub type DiscretizedOperatorF32 = operator::DiscretizedOperator<f32>;
pub type JacobiRuleF64 = quadrature::JacobiRule<f64>;
pub type JacobiRuleF32 = quadrature::JacobiRule<f32>;
pub type GradedRuleF64 = quadrature::GradedRule<f64>;
pub type GradedRuleF32 = quadrature::GradedRule<f32>;
pub type ExtremalFamilyF64 = normest::ExtremalFamily<f64>;
pub type ExtremalFamilyF32 = normest::ExtremalFamily<f32>;
pub type NormReportF64 = normest::NormReport<f64>;
pub type NormReportF32 = normest::NormReport<f32>;
pub type BallParamsF64 = ball::BallParams<f64>;
pub type BallParamsF32 = ball::BallParams<f32>;
