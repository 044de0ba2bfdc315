//! `hypop`: runs the verification suites and writes report records.
//!
//! Exit status: 0 when every check passes, 1 when a check fails or a
//! numerical route breaks down, 2 on bad flags or configuration.

mod config;
mod emit;
mod record;
mod suites;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{load_config, validate, Format, Overrides, Settings, Suite};
use record::Status;

#[derive(Parser, Debug)]
#[command(name = "hypop", version, about = "Verify hypergeometric operator norm formulas numerically")]
struct Args {
    /// Suite to run
    #[arg(long, value_enum)]
    suite: Option<Suite>,

    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Weight exponent mu > 0 of the interval measure
    #[arg(long)]
    mu: Option<f64>,

    /// Kernel weight sigma > -1
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,

    /// Lebesgue exponent p >= 1
    #[arg(long)]
    p: Option<f64>,

    /// Complex dimension of the ball
    #[arg(long)]
    n: Option<u32>,

    /// Nyström nodes (multiple of 8)
    #[arg(long)]
    order: Option<usize>,

    /// Smallest eta in the lower-bound sweep
    #[arg(long)]
    eta_min: Option<f64>,

    /// Seed for the randomized identity draws
    #[arg(long)]
    seed: Option<u64>,

    /// key=value file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Args {
    fn overrides(&self) -> Overrides {
        Overrides {
            suite: self.suite,
            format: self.format,
            mu: self.mu,
            sigma: self.sigma,
            p: self.p,
            n: self.n,
            order: self.order,
            eta_min: self.eta_min,
            seed: self.seed,
        }
    }
}

fn settings(args: &Args) -> anyhow::Result<Settings> {
    let mut s = Settings::default();
    if let Some(path) = &args.config {
        load_config(path)?.apply(&mut s);
    }
    args.overrides().apply(&mut s);
    validate(&s)?;
    Ok(s)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let s = match settings(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("hypop: {e:#}");
            return ExitCode::from(2);
        }
    };

    let mut reports = Vec::new();
    for suite in s.suite.expand() {
        match suites::run(suite, &s) {
            Ok(r) => reports.push(r),
            Err(e @ hypop_core::Error::Domain { .. }) => {
                eprintln!("hypop: {}: {e}", suite.name());
                return ExitCode::from(2);
            }
            Err(e) => {
                eprintln!("hypop: {}: {e}", suite.name());
                return ExitCode::from(1);
            }
        }
    }

    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = emit::emit(&mut out, &reports, s.format).and_then(|_| out.flush().map_err(Into::into)) {
        eprintln!("hypop: writing report: {e:#}");
        return ExitCode::from(1);
    }

    let failed = reports.iter().flat_map(|r| &r.records).filter(|r| r.status == Status::Fail).count();
    if failed > 0 {
        eprintln!("hypop: {failed} check(s) failed");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
