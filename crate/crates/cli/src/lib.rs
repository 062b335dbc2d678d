//! Batch front end for `bernoulli-core`.
//!
//! Exit codes: 0 when everything requested passed, 1 when a sweep found at
//! least one failure, 2 for usage or configuration errors.

mod config;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use bernoulli_core::congr::{prime_sweep, CongruenceId};
use bernoulli_core::fps::{self, SeriesParams};
use bernoulli_core::identities::{verify_identity, IdentityId, Sweep};
use bernoulli_core::Rat;
use clap::Parser;
use thiserror::Error;

pub use config::{Cli, Command, Format};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum UsageError {
    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),
    #[error(transparent)]
    Identity(#[from] bernoulli_core::identities::IdentityError),
    #[error(transparent)]
    Congruence(#[from] bernoulli_core::congr::CongrError),
    #[error(transparent)]
    Series(#[from] bernoulli_core::fps::FpsError),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    Bernoulli,
    Euler,
    Cauchy1,
    Stirling1,
    Stirling2,
    Harmonic,
    Dibernoulli,
    Hw,
    PolyBernoulli,
}

impl FromStr for Sequence {
    type Err = UsageError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "bernoulli" => Sequence::Bernoulli,
            "euler" => Sequence::Euler,
            "cauchy1" => Sequence::Cauchy1,
            "stirling1" => Sequence::Stirling1,
            "stirling2" => Sequence::Stirling2,
            "harmonic" => Sequence::Harmonic,
            "dibernoulli" => Sequence::Dibernoulli,
            "hw" => Sequence::Hw,
            "poly_bernoulli" => Sequence::PolyBernoulli,
            _ => return Err(UsageError::UnknownSequence(s.to_owned())),
        })
    }
}

impl Sequence {
    pub fn name(self) -> &'static str {
        match self {
            Sequence::Bernoulli => "bernoulli",
            Sequence::Euler => "euler",
            Sequence::Cauchy1 => "cauchy1",
            Sequence::Stirling1 => "stirling1",
            Sequence::Stirling2 => "stirling2",
            Sequence::Harmonic => "harmonic",
            Sequence::Dibernoulli => "dibernoulli",
            Sequence::Hw => "hw",
            Sequence::PolyBernoulli => "poly_bernoulli",
        }
    }
}

/// A fully validated command; every selector has been resolved.
#[derive(Debug, Clone)]
pub enum Job {
    Compute {
        sequence: Sequence,
        n_max: usize,
        x: Option<Rat>,
        p: Option<u32>,
    },
    Verify {
        ids: Vec<IdentityId>,
        selector: String,
        sweep: Sweep,
    },
    Congruence {
        ids: Vec<CongruenceId>,
        selector: String,
        p_max: u64,
    },
    Series {
        name: String,
        params: SeriesParams,
        order: usize,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub job: Job,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub meta: bool,
}

fn select<T: Copy + FromStr>(selector: &str, all: &[T]) -> Result<Vec<T>, T::Err> {
    if selector == "all" {
        Ok(all.to_vec())
    } else {
        selector.split(',').map(|s| s.trim().parse()).collect()
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        let (job, output) = match cli.command {
            Command::Compute(a) => {
                let sequence: Sequence = a.sequence.parse()?;
                match sequence {
                    Sequence::Hw if a.x.is_none() => {
                        return Err(UsageError::Invalid("hw needs --x".to_owned()))
                    }
                    Sequence::PolyBernoulli if a.p.is_none() => {
                        return Err(UsageError::Invalid("poly_bernoulli needs --p".to_owned()))
                    }
                    _ => {}
                }
                if a.p == Some(0) {
                    return Err(UsageError::Invalid("--p must be positive".to_owned()));
                }
                let job = Job::Compute {
                    sequence,
                    n_max: a.n_max,
                    x: a.x,
                    p: a.p,
                };
                (job, a.output)
            }
            Command::Verify(a) => {
                let ids = select(&a.identity, IdentityId::ALL)?;
                let fault = a
                    .inject_off_by_one
                    .as_deref()
                    .map(IdentityId::from_str)
                    .transpose()?;
                if let (Some(lo), Some(hi)) = (a.j_min, a.j_max) {
                    if lo > hi {
                        return Err(UsageError::Invalid("--j-min exceeds --j-max".to_owned()));
                    }
                }
                let sweep = Sweep {
                    n_max: a.n_max,
                    j_min: a.j_min,
                    j_max: a.j_max,
                    m_max: a.m_max,
                    include_j_equals_n: a.include_j_equals_n,
                    fault,
                    ..Sweep::default()
                };
                let job = Job::Verify {
                    ids,
                    selector: a.identity,
                    sweep,
                };
                (job, a.output)
            }
            Command::Congruence(a) => {
                let ids = select(&a.congruence, CongruenceId::ALL)?;
                if a.p_max < 3 {
                    return Err(UsageError::Invalid("--p-max must be at least 3".to_owned()));
                }
                let job = Job::Congruence {
                    ids,
                    selector: a.congruence,
                    p_max: a.p_max,
                };
                (job, a.output)
            }
            Command::Series(a) => {
                if !fps::SERIES_NAMES.contains(&a.name.as_str()) {
                    return Err(fps::FpsError::UnknownSeries(a.name).into());
                }
                if a.p == Some(0) {
                    return Err(UsageError::Invalid("--p must be positive".to_owned()));
                }
                let params = SeriesParams {
                    k: a.k,
                    p: a.p,
                    x: a.x,
                };
                // parameter check only; the real build happens in execute
                fps::named_series(&a.name, &params, 1)?;
                let job = Job::Series {
                    name: a.name,
                    params,
                    order: a.order,
                };
                (job, a.output)
            }
        };
        Ok(Self {
            job,
            format: output.format,
            out: output.out,
            meta: !output.no_meta,
        })
    }
}

/// Rendered output plus the exit code it implies.
pub struct Outcome {
    pub body: String,
    pub exit: i32,
}

pub fn execute(config: &RunConfig) -> Result<Outcome, UsageError> {
    let meta = config.meta.then(render::Meta::now);
    let outcome = match &config.job {
        Job::Compute { sequence, n_max, x, p } => {
            let table = render::compute_table(*sequence, *n_max, x.as_ref(), *p);
            Outcome {
                body: render::render_compute(&table, config.format, meta.as_ref()),
                exit: EXIT_PASS,
            }
        }
        Job::Verify { ids, selector, sweep } => {
            let reports: Vec<_> = ids.iter().map(|&id| verify_identity(id, sweep)).collect();
            let suite = render::IdentitySuite::new(selector, &reports);
            let exit = if suite.failures.is_empty() { EXIT_PASS } else { EXIT_FAIL };
            Outcome {
                body: render::render_suite(&suite, config.format, meta.as_ref()),
                exit,
            }
        }
        Job::Congruence { ids, selector, p_max } => {
            let report = prime_sweep(ids, *p_max);
            let suite = render::congruence_suite(selector, &report);
            let exit = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            Outcome {
                body: render::render_suite(&suite, config.format, meta.as_ref()),
                exit,
            }
        }
        Job::Series { name, params, order } => {
            let series = fps::named_series(name, params, *order)?;
            Outcome {
                body: render::render_series(name, params, &series, config.format, meta.as_ref()),
                exit: EXIT_PASS,
            }
        }
    };
    Ok(outcome)
}

fn emit(config: &RunConfig, body: &str) -> std::io::Result<()> {
    match &config.out {
        Some(path) => std::fs::write(path, body),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let outcome = execute(&config)?;
        emit(&config, &outcome.body)?;
        Ok(outcome.exit)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
