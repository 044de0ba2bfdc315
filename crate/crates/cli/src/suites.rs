use hypop_core::ball::{
    berezin_l2_doublefactorial, berezin_norm, berezin_radial_estimate, bloch_constants, radial_apply, tilde_apply_disc,
    tilde_norm_formula, tilde_norm_via_interval, BallParams, RadialFunction,
};
use hypop_core::identities::{run_all, DEFAULT_DRAWS, IDENTITY_TOL};
use hypop_core::normest::{l1_norm_numeric, norm_report, L1Estimate, ReportConfig};
use hypop_core::operator::{norm_formula, LebesgueExponent, OperatorParams};
use hypop_core::specfun::ln_gamma;
use hypop_core::{Error, Result};
use num_complex::Complex;

use crate::config::{Settings, Suite};
use crate::emit::SuiteReport;
use crate::record::{excess, rel_error, Entries, ReportRecord};

const L1_TOL: f64 = 1e-6;
const EXACT_TOL: f64 = 1e-12;
const DISC_TOL: f64 = 1e-6;
/// Closed-form checks of the Berezin table at `p = 4` only bound the
/// radial estimate from above.
const BOUND_TOL: f64 = 1e-9;
const LARGE_P: f64 = 1e9;
const LARGE_P_TOL: f64 = 1e-8;

pub fn run(suite: Suite, s: &Settings) -> Result<SuiteReport> {
    let records = match suite {
        Suite::Identities => identities(s)?,
        Suite::IntervalNorms => interval_norms(s)?,
        Suite::Ball => ball(s)?,
        Suite::Berezin => berezin(s)?,
        Suite::All => unreachable!("expanded by the caller"),
    };
    Ok(SuiteReport { suite: suite.name(), records })
}

fn identities(s: &Settings) -> Result<Vec<ReportRecord>> {
    let checks = run_all::<f64>(DEFAULT_DRAWS, s.seed)?;
    Ok(checks
        .into_iter()
        .map(|c| {
            let mut inputs = Entries::from([("draws", c.draws as f64), ("seed", s.seed as f64)]);
            for (k, v) in &c.worst {
                inputs.push(format!("worst_{k}"), *v);
            }
            ReportRecord::new(
                c.name,
                inputs,
                c.worst_rhs,
                [("worst_lhs", c.worst_lhs)].into(),
                [("max", c.max_rel_error)].into(),
                IDENTITY_TOL,
            )
        })
        .collect())
}

fn interval_norms(s: &Settings) -> Result<Vec<ReportRecord>> {
    let params = OperatorParams::new(s.mu, s.sigma)?;
    let p = LebesgueExponent::new(s.p)?;
    let inputs = Entries::from([
        ("mu", s.mu),
        ("sigma", s.sigma),
        ("p", s.p),
        ("order", s.order as f64),
        ("eta_min", s.eta_min),
    ]);
    let id = format!("F mu={} sigma={} p={}", s.mu, s.sigma, s.p);
    let closed = match norm_formula(params, p) {
        Ok(v) => v,
        Err(Error::Unbounded { .. }) => {
            return Ok(vec![ReportRecord::new(id, inputs, f64::INFINITY, Entries::default(), Entries::default(), 0.0)]);
        }
        Err(e) => return Err(e),
    };
    if s.p == 1.0 {
        let mut routes = Entries::default();
        let mut errors = Entries::default();
        if let L1Estimate::Finite { value, grid_max, endpoint } = l1_norm_numeric(params, 32)? {
            routes.0.extend([("l1_sup".into(), value), ("grid_max".into(), grid_max), ("endpoint".into(), endpoint)]);
            errors.push("l1_sup", rel_error(value, closed));
        }
        return Ok(vec![ReportRecord::new(id, inputs, closed, routes, errors, L1_TOL)]);
    }
    let cfg = ReportConfig { eta_min: s.eta_min, nystrom_order: s.order, ..ReportConfig::default() };
    let r = norm_report(params, p, cfg)?;
    let routes = Entries::from([
        ("schur_right_max", r.schur_max_ratio_right),
        ("schur_left_max", r.schur_max_ratio_left),
        ("sweep_best", r.sweep_best_lower),
        ("nystrom", r.nystrom_estimate),
    ]);
    // Every route bounds the norm from below; only the sweep is expected to
    // close the gap, to within roughly eta_min.
    let errors = Entries::from([
        ("schur_right_excess", excess(r.schur_max_ratio_right, closed)),
        ("schur_left_excess", excess(r.schur_max_ratio_left, closed)),
        ("nystrom_excess", excess(r.nystrom_estimate, closed)),
        ("sweep_gap", r.rel_gap_lower),
    ]);
    Ok(vec![ReportRecord::new(id, inputs, closed, routes, errors, (10.0 * s.eta_min).max(1e-6))])
}

/// `Γ(2λ+1)/Γ²(λ+1/2)` through the duplication formula:
/// `4^λ Γ(λ+1) / (√π Γ(λ+1/2))`.
fn bloch_by_duplication(lambda: f64) -> Result<f64> {
    let ln = lambda * 4f64.ln() + ln_gamma(lambda + 1.0)? - 0.5 * std::f64::consts::PI.ln() - ln_gamma(lambda + 0.5)?;
    Ok(ln.exp())
}

fn ball(s: &Settings) -> Result<Vec<ReportRecord>> {
    let bp = BallParams::new(s.n, s.sigma)?;
    let inputs = Entries::from([("n", s.n as f64), ("sigma", s.sigma), ("p", s.p)]);
    let mut out = Vec::new();

    let id = format!("tilde n={} sigma={} p={}", s.n, s.sigma, s.p);
    match tilde_norm_formula(bp, s.p) {
        Ok(closed) => {
            let interval = tilde_norm_via_interval(bp, s.p)?;
            out.push(ReportRecord::new(
                id,
                inputs.clone(),
                closed,
                [("interval", interval)].into(),
                [("interval", rel_error(interval, closed))].into(),
                EXACT_TOL,
            ));
        }
        Err(Error::Unbounded { .. }) => {
            out.push(ReportRecord::new(id, inputs.clone(), f64::INFINITY, Entries::default(), Entries::default(), 0.0));
        }
        Err(e) => return Err(e),
    }

    let (beta, full) = bloch_constants(bp)?;
    let dup = bloch_by_duplication(bp.lambda())?;
    out.push(ReportRecord::new(
        format!("bloch n={} sigma={}", s.n, s.sigma),
        Entries::from([("n", s.n as f64), ("sigma", s.sigma)]),
        beta,
        [("duplication", dup), ("full_norm", full)].into(),
        [("duplication", rel_error(dup, beta))].into(),
        EXACT_TOL,
    ));

    if s.n == 1 {
        let profile = |t: f64| (0.5 * t).exp();
        let r = 0.5;
        let reduced = radial_apply(bp, &RadialFunction(profile), r * r, 96)?;
        let polar = tilde_apply_disc(s.sigma, |w| profile(w.norm_sqr()), Complex::new(r, 0.0), 64, 256)?;
        out.push(ReportRecord::new(
            format!("radial-reduction sigma={}", s.sigma),
            Entries::from([("sigma", s.sigma), ("r", r)]),
            reduced,
            [("polar", polar)].into(),
            [("polar", rel_error(polar, reduced))].into(),
            DISC_TOL,
        ));
    }
    Ok(out)
}

fn berezin(s: &Settings) -> Result<Vec<ReportRecord>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for p in [2.0, 4.0, f64::INFINITY] {
            let closed = berezin_norm(n, p)?;
            let inputs = Entries::from([("n", n as f64), ("p", p)]);
            let id = format!("berezin n={n} p={p}");
            let record = if p.is_infinite() {
                let large = berezin_norm(n, LARGE_P)?;
                ReportRecord::new(
                    id,
                    inputs,
                    closed,
                    [("large_p", large)].into(),
                    [("large_p", rel_error(large, closed))].into(),
                    LARGE_P_TOL,
                )
            } else {
                let radial = berezin_radial_estimate(n, p, s.order)?;
                let mut routes = Entries::from([("radial_nystrom", radial)]);
                let mut errors = Entries::from([("radial_nystrom_excess", excess(radial, closed))]);
                let tol = if p == 2.0 {
                    let df = berezin_l2_doublefactorial(n)?;
                    routes.push("double_factorial", df);
                    errors.push("double_factorial", rel_error(df, closed));
                    EXACT_TOL
                } else {
                    BOUND_TOL
                };
                ReportRecord::new(id, inputs, closed, routes, errors, tol)
            };
            out.push(record);
        }
    }
    Ok(out)
}
