use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    IntervalNorms,
    Ball,
    Berezin,
    All,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Identities, Suite::IntervalNorms, Suite::Ball, Suite::Berezin],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::IntervalNorms => "interval-norms",
            Suite::Ball => "ball",
            Suite::Berezin => "berezin",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Everything a run is parameterized by.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub suite: Suite,
    pub format: Format,
    pub mu: f64,
    pub sigma: f64,
    pub p: f64,
    pub n: u32,
    pub order: usize,
    pub eta_min: f64,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            format: Format::Text,
            mu: 1.0,
            sigma: 0.0,
            p: 2.0,
            n: 1,
            order: 128,
            eta_min: 1e-4,
            seed: 2024,
        }
    }
}

/// Values supplied by a config file or by flags; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub suite: Option<Suite>,
    pub format: Option<Format>,
    pub mu: Option<f64>,
    pub sigma: Option<f64>,
    pub p: Option<f64>,
    pub n: Option<u32>,
    pub order: Option<usize>,
    pub eta_min: Option<f64>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, s: &mut Settings) {
        macro_rules! take {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { s.$f = v; })* };
        }
        take!(suite, format, mu, sigma, p, n, order, eta_min, seed);
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e| anyhow!("bad value {value:?} for {key}: {e}"))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T> {
    T::from_str(value, true).map_err(|e| anyhow!("bad value {value:?} for {key}: {e}"))
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
/// Keys match the long flag names, with `_` and `-` interchangeable.
pub fn parse_config(text: &str) -> Result<Overrides> {
    let mut o = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').with_context(|| format!("line {}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        let key = key.as_str();
        match key {
            "suite" => o.suite = Some(parse_enum(key, value)?),
            "format" => o.format = Some(parse_enum(key, value)?),
            "mu" => o.mu = Some(parse(key, value)?),
            "sigma" => o.sigma = Some(parse(key, value)?),
            "p" => o.p = Some(parse(key, value)?),
            "n" => o.n = Some(parse(key, value)?),
            "order" => o.order = Some(parse(key, value)?),
            "eta-min" => o.eta_min = Some(parse(key, value)?),
            "seed" => o.seed = Some(parse(key, value)?),
            other => bail!("line {}: unknown key {other:?}", lineno + 1),
        }
    }
    Ok(o)
}

pub fn load_config(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("in {}", path.display()))
}

/// Range checks that do not depend on the suite.
pub fn validate(s: &Settings) -> Result<()> {
    if !(s.mu > 0.0 && s.mu.is_finite()) {
        bail!("mu = {} must be positive", s.mu);
    }
    if !(s.sigma > -1.0 && s.sigma.is_finite()) {
        bail!("sigma = {} must exceed -1", s.sigma);
    }
    if !(1.0..f64::INFINITY).contains(&s.p) {
        bail!("p = {} must lie in [1, inf)", s.p);
    }
    if s.n == 0 {
        bail!("n must be at least 1");
    }
    if s.order < 16 || !s.order.is_multiple_of(8) {
        bail!("order = {} must be a multiple of 8, at least 16", s.order);
    }
    if !(s.eta_min > 0.0 && s.eta_min < 1.0) {
        bail!("eta-min = {} must lie in (0, 1)", s.eta_min);
    }
    Ok(())
}
