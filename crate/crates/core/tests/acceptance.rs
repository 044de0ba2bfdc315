//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Tolerances are pinned below; the sweep thresholds come from an
//! independent high-precision sweep of the closed-form pairing.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypop_core::ball::{
    berezin_apply_disc, berezin_asymptotic_p_to_1, berezin_l2_doublefactorial, berezin_norm, berezin_radial_estimate,
    bloch_constants, radial_apply, tilde_apply_disc, tilde_norm_formula, tilde_norm_via_interval, BallParams,
    RadialFunction,
};
use hypop_core::identities::{run_all, IdentityCheck};
use hypop_core::normest::{
    bilinear_form_closed, bilinear_form_numeric, l1_norm_numeric, l2_opnorm_singular, lower_bound_sweep,
    lp_opnorm_numeric, norm_report, schur_check, ExtremalFamily, L1Estimate, ReportConfig, NYSTROM_PANEL,
};
use hypop_core::operator::{discretize_graded, graded_depth_for_order, norm_formula, LebesgueExponent, OperatorParams};
use hypop_core::specfun::{gamma_ratio, DiagSup};

const IDENTITY_DRAWS: usize = 100;
const IDENTITY_SEED: u64 = 2024;
const IDENTITY_TOL: f64 = 1e-7;

const L1_TOL: f64 = 1e-6;
const L1_GRID: usize = 32;

const SCHUR_EXCESS: f64 = 1e-6;
const SCHUR_EDGE: f64 = 0.01;
const SCHUR_GRID: usize = 32;

const SWEEP_ETA: f64 = 1e-4;
const SWEEP_PRIMARY: f64 = 0.999;
const SWEEP_OTHERS: f64 = 0.99;
/// `(μ, σ, p, ratio at η = 1e-4)` from the offline sweep.
const SWEEP_TRIPLES: [(f64, f64, f64, f64); 5] = [
    (2.0, 1.0, 3.0, 0.99977),
    (1.0, 0.5, 1.5, 0.99995),
    (3.0, 2.0, 4.0, 0.99962),
    (2.0, -0.3, 2.0, 0.99973),
    (1.0, 1.0, 1.25, 0.99997),
];

const TWIN_DRAWS: usize = 50;
const TWIN_SEED: u64 = 77;
const TWIN_ORDER: usize = 12;
const TWIN_TOL: f64 = 1e-7;

const NYSTROM_ORDERS: [usize; 4] = [64, 128, 256, 512];
const NYSTROM_SLACK: f64 = 1e-6;
const ROUTE_TOL: f64 = 1e-8;

const BRIDGE_TOL: f64 = 1e-12;
const BEREZIN_TOL: f64 = 1e-12;
const ASYMPTOTIC_TOL: f64 = 0.005;
const DISC_ONE_TOL: f64 = 1e-8;
const DISC_TOL: f64 = 1e-6;
const BLOCH_TOL: f64 = 1e-12;

type Outcome = Result<(bool, String), hypop_core::Error>;

struct Suite {
    failures: usize,
}

impl Suite {
    fn run(&mut self, label: &str, check: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (ok, detail) = match check() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            self.failures += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} {label}: {detail} [{:.1}s]", start.elapsed().as_secs_f64());
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn op(mu: f64, sigma: f64) -> Result<OperatorParams<f64>, hypop_core::Error> {
    OperatorParams::new(mu, sigma)
}

fn lp(p: f64) -> Result<LebesgueExponent<f64>, hypop_core::Error> {
    LebesgueExponent::new(p)
}

fn identities() -> Outcome {
    let checks: Vec<IdentityCheck> = run_all::<f64>(IDENTITY_DRAWS, IDENTITY_SEED)?;
    let ok = checks.iter().all(|c| c.draws >= IDENTITY_DRAWS && c.passes(IDENTITY_TOL));
    let detail = checks.iter().map(|c| format!("{} {:.1e}", c.name, c.max_rel_error)).collect::<Vec<_>>().join(", ");
    Ok((ok, format!("{detail} (tol {IDENTITY_TOL:e}, {IDENTITY_DRAWS} draws)")))
}

fn l1() -> Outcome {
    let mut worst = 0.0_f64;
    for mu in [1.0, 2.0, 3.0] {
        for sigma in [0.5, 1.0, 2.0] {
            let params = op(mu, sigma)?;
            let lambda = params.lambda();
            let expected = gamma_ratio(&[mu + 1.0, sigma], &[lambda, lambda])?;
            let got = l1_norm_numeric(params, L1_GRID)?.value().unwrap_or(f64::INFINITY);
            worst = worst.max(rel(got, expected));
        }
    }
    let mut logs = true;
    for mu in [1.0, 2.0, 3.0] {
        logs &= matches!(l1_norm_numeric(op(mu, 0.0)?, L1_GRID)?, L1Estimate::Divergent(DiagSup::Logarithmic { .. }));
    }
    Ok((worst <= L1_TOL && logs, format!("max rel {worst:.1e} (tol {L1_TOL:e}), sigma=0 logarithmic: {logs}")))
}

fn schur() -> Outcome {
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_edge = 0.0_f64;
    let mut cases = 0;
    for mu in [0.5, 1.0, 2.0] {
        for sigma in [0.0, 0.5, 1.5] {
            for p in [1.5, 2.0, 4.0] {
                let out = schur_check(op(mu, sigma)?, lp(p)?, SCHUR_GRID)?;
                let excess = out.max_ratio_right.max(out.max_ratio_left) / out.bound - 1.0;
                let edge = (1.0 - out.right_at_edge / out.bound).max(1.0 - out.left_at_edge / out.bound);
                worst_excess = worst_excess.max(excess);
                worst_edge = worst_edge.max(edge);
                cases += 1;
            }
        }
    }
    let ok = cases == 27 && worst_excess <= SCHUR_EXCESS && worst_edge <= SCHUR_EDGE;
    Ok((
        ok,
        format!("{cases} cases, max excess {worst_excess:.1e} (tol {SCHUR_EXCESS:e}), edge gap at 2^-40 {worst_edge:.2e} (tol {SCHUR_EDGE})"),
    ))
}

fn sweep_ratio(mu: f64, sigma: f64, p: f64) -> Result<f64, hypop_core::Error> {
    let (params, p) = (op(mu, sigma)?, lp(p)?);
    let value = lower_bound_sweep(params, p, &[SWEEP_ETA])?[0].1;
    Ok(value / norm_formula(params, p)?)
}

fn sweep() -> Outcome {
    let primary = sweep_ratio(1.0, 0.0, 2.0)?;
    let mut ok = (SWEEP_PRIMARY..=1.0 + 1e-12).contains(&primary);
    let mut parts = vec![format!("(1,0,2) {primary:.5}")];
    for (mu, sigma, p, recorded) in SWEEP_TRIPLES {
        let r = sweep_ratio(mu, sigma, p)?;
        ok &= (SWEEP_OTHERS..=1.0 + 1e-12).contains(&r) && (r - recorded).abs() < 1e-5;
        parts.push(format!("({mu},{sigma},{p}) {r:.5}"));
    }
    Ok((ok, format!("{} (need {SWEEP_PRIMARY} / {SWEEP_OTHERS})", parts.join(", "))))
}

fn twin() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(TWIN_SEED);
    let mut worst = 0.0_f64;
    for _ in 0..TWIN_DRAWS {
        let p = rng.gen_range(1.5..3.0);
        let sigma = rng.gen_range((1.0 / p - 1.0 + 0.3)..2.0);
        let mu = rng.gen_range(0.5..3.0);
        let theta = rng.gen_range(1.2..3.0);
        let theta_tilde = rng.gen_range(-0.9..1.0);
        let params = op(mu, sigma)?;
        let fam = ExtremalFamily::new(params, lp(p)?, theta, theta_tilde)?;
        let closed = bilinear_form_closed(params, &fam)?;
        let numeric = bilinear_form_numeric(params, &fam, TWIN_ORDER)?;
        worst = worst.max(rel(numeric, closed));
    }
    Ok((worst <= TWIN_TOL, format!("{TWIN_DRAWS} draws, max rel {worst:.1e} (tol {TWIN_TOL:e})")))
}

fn nystrom() -> Outcome {
    let (params, p) = (op(1.0, 0.0)?, lp(2.0)?);
    let mut estimates = Vec::new();
    let mut route_gap = 0.0_f64;
    for order in NYSTROM_ORDERS {
        let disc = discretize_graded(params, p, graded_depth_for_order(order, NYSTROM_PANEL)?, NYSTROM_PANEL)?;
        let power = lp_opnorm_numeric(&disc)?;
        if order <= 256 {
            route_gap = route_gap.max(rel(power, l2_opnorm_singular(&disc)?));
        }
        estimates.push(power);
    }
    let at_256 = estimates[2] / PI;
    let monotone = estimates.windows(2).all(|w| w[1] >= w[0] * (1.0 - NYSTROM_SLACK));
    let ok = (0.9..=1.0).contains(&at_256) && monotone && route_gap <= ROUTE_TOL;
    let shown = estimates.iter().map(|e| format!("{:.4}", e / PI)).collect::<Vec<_>>().join(" ");
    Ok((
        ok,
        format!(
            "orders 64..512 / pi: {shown}; nondecreasing {monotone}; p=2 routes {route_gap:.1e} (tol {ROUTE_TOL:e})"
        ),
    ))
}

fn bridge() -> Outcome {
    let mut worst = 0.0_f64;
    for n in [1, 2, 3, 5] {
        for sigma in [0.0, 0.5, 1.0, 2.5] {
            for p in [1.25, 1.5, 2.0, 4.0] {
                let bp = BallParams::new(n, sigma)?;
                worst = worst.max(rel(tilde_norm_formula(bp, p)?, tilde_norm_via_interval(bp, p)?));
            }
        }
    }
    let disc = tilde_norm_formula(BallParams::new(1, 0.0)?, 2.0)?;
    let weighted = tilde_norm_formula(BallParams::new(1, 1.0)?, 1.0)?;
    let (e1, e2) = (rel(disc, PI), rel(weighted, 8.0 / PI));
    let ok = worst <= BRIDGE_TOL && e1 <= BRIDGE_TOL && e2 <= BRIDGE_TOL;
    Ok((ok, format!("grid max rel {worst:.1e}, pi {e1:.1e}, 8/pi {e2:.1e} (tol {BRIDGE_TOL:e})")))
}

fn berezin() -> Outcome {
    let mut worst = 0.0_f64;
    for n in 1..=10 {
        worst = worst.max(rel(berezin_norm(n, 2.0)?, berezin_l2_doublefactorial(n)?));
    }
    let at_inf = berezin_norm(1, f64::INFINITY)?;
    let mut asym = 0.0_f64;
    for n in 1..=3 {
        let p = 1.001;
        asym = asym.max(rel(berezin_norm(n, p)?, berezin_asymptotic_p_to_1(n, p)));
    }
    let ok = worst <= BEREZIN_TOL && at_inf == 1.0 && asym <= ASYMPTOTIC_TOL;
    Ok((ok, format!("p=2 max rel {worst:.1e} (tol {BEREZIN_TOL:e}), p=inf {at_inf}, p=1.001 ratio gap {asym:.2e} (tol {ASYMPTOTIC_TOL})")))
}

fn disc() -> Outcome {
    let mut ones = 0.0_f64;
    for r in [0.0_f64, 0.3, 0.6, 0.9] {
        for k in 0..4 {
            let z = Complex::from_polar(r, 0.4 + k as f64 * PI / 2.0);
            ones = ones.max((berezin_apply_disc(|_| 1.0, z, 64, 512)? - 1.0).abs());
        }
    }
    let mut harmonic = 0.0_f64;
    for z in [Complex::new(0.0_f64, 0.0), Complex::new(0.3, 0.0), Complex::new(0.0, 0.6)] {
        harmonic = harmonic.max((berezin_apply_disc(|w| w.re, z, 64, 256)? - z.re).abs());
    }
    let profile = |t: f64| (0.5 * t).exp();
    let mut radial = 0.0_f64;
    for sigma in [0.0, 1.0, 2.0] {
        let bp = BallParams::new(1, sigma)?;
        for r in [0.2, 0.5, 0.7] {
            let via_interval = radial_apply(bp, &RadialFunction(profile), r * r, 96)?;
            let direct = tilde_apply_disc(sigma, |w| profile(w.norm_sqr()), Complex::new(r, 0.0), 64, 256)?;
            radial = radial.max(rel(direct, via_interval));
        }
    }
    let ok = ones <= DISC_ONE_TOL && harmonic <= DISC_TOL && radial <= DISC_TOL;
    Ok((
        ok,
        format!("f=1 {ones:.1e} (tol {DISC_ONE_TOL:e}), Re w {harmonic:.1e}, radial reduction {radial:.1e} (tol {DISC_TOL:e})"),
    ))
}

fn bloch() -> Outcome {
    let (beta, full) = bloch_constants(BallParams::new(1, 0.0)?)?;
    let (e1, e2) = (rel(beta, 8.0 / PI), rel(full, 1.0 + 8.0 / PI));
    Ok((e1 <= BLOCH_TOL && e2 <= BLOCH_TOL, format!("8/pi {e1:.1e}, 1+8/pi {e2:.1e} (tol {BLOCH_TOL:e})")))
}

fn berezin_radial() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, p) in [(1, 2.0), (2, 3.0)] {
        let est = berezin_radial_estimate(n, p, 128)?;
        let exact = berezin_norm(n, p)?;
        ok &= est <= exact * (1.0 + 1e-3) && est >= 0.8 * exact;
        parts.push(format!("n={n} p={p} {:.4}", est / exact));
    }
    Ok((ok, format!("radial estimate / norm: {}", parts.join(", "))))
}

fn sandwich() -> Outcome {
    let cfg = ReportConfig { nystrom_order: 128, ..ReportConfig::default() };
    let mut ok = true;
    let mut parts = Vec::new();
    for (mu, sigma, p) in [(1.0, 0.0, 2.0), (2.0, 1.0, 3.0)] {
        let r = norm_report(op(mu, sigma)?, lp(p)?, cfg)?;
        ok &= r.is_consistent(1e-6);
        parts.push(format!(
            "({mu},{sigma},{p}) lower gap {:.1e}, nystrom gap {:.1e}",
            r.rel_gap_lower, r.rel_gap_nystrom
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn main() {
    let mut suite = Suite { failures: 0 };
    suite.run("criterion 1 identities", identities);
    suite.run("criterion 2 L1 norm", l1);
    suite.run("criterion 3 Schur ratios", schur);
    suite.run("criterion 4 lower-bound sweep", sweep);
    suite.run("criterion 5 bilinear twin", twin);
    suite.run("criterion 6 discretized p-norm", nystrom);
    suite.run("criterion 7 ball bridge", bridge);
    suite.run("criterion 8 Berezin norms", berezin);
    suite.run("criterion 9 disc cross-check", disc);
    suite.run("criterion 10 Bloch constants", bloch);
    suite.run("supplementary Berezin radial estimate", berezin_radial);
    suite.run("supplementary norm sandwich", sandwich);
    if suite.failures > 0 {
        println!("{} acceptance check(s) failed", suite.failures);
        std::process::exit(1);
    }
    println!("all acceptance checks passed");
}
