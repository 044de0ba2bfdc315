use std::f64::consts::PI;

use hypop_core::ball::{
    berezin_norm, bergman_exact_norms, bergman_upper_bound, conj_tilde_norm_formula, projection_upper_bound,
    riesz_thorin_bound, tilde_norm_formula, BallParams,
};

#[test]
fn projection_bounds_agree() {
    for n in 1..5 {
        for &p in &[1.5_f64, 2.0, 3.0, 6.0] {
            let bp = BallParams::new(n, 0.0).unwrap();
            let a = tilde_norm_formula(bp, p).unwrap();
            let b = projection_upper_bound(n, p).unwrap();
            assert!((a - b).abs() < 1e-12 * b, "n={n} p={p}: {a} vs {b}");
        }
    }
}

#[test]
fn duality_of_tilde_norm() {
    let bp = BallParams::new(2, 1.0).unwrap();
    let p: f64 = 3.0;
    let q = p / (p - 1.0);
    assert!((conj_tilde_norm_formula(bp, p).unwrap() - tilde_norm_formula(bp, q).unwrap()).abs() < 1e-14);
}

#[test]
fn bergman_interpolation_is_below_tilde_bound() {
    let bp = BallParams::new(1, 1.0).unwrap();
    let (l1, l2) = bergman_exact_norms(bp);
    assert!((l1.unwrap() - 8.0 / PI).abs() < 1e-12);
    assert!((l2.unwrap() - 2f64.sqrt()).abs() < 1e-12);
    for &p in &[1.0, 1.3, 1.7, 2.0] {
        assert!(riesz_thorin_bound(bp, p).unwrap() <= bergman_upper_bound(bp, p).unwrap() * (1.0 + 1e-12));
    }
}

#[test]
fn berezin_decreases_in_p() {
    for n in 1..4 {
        let mut prev = f64::INFINITY;
        for &p in &[1.1, 1.5, 2.0, 4.0, 10.0, f64::INFINITY] {
            let v = berezin_norm(n, p).unwrap();
            assert!(v < prev && v >= 1.0);
            prev = v;
        }
    }
}
