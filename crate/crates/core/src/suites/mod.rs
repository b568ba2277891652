//! Named property and differential suites. Every case is deterministic in
//! `(seed, index)`; cases run in parallel and are reported in index order.

mod frames;
mod pointwise;
mod rl;

pub use frames::kernels_exhaustive;

use rayon::prelude::*;

use crate::random::{case_rng, CaseRng};
use crate::rl::DEFAULT_MAX_GRID;

/// Suite names with their default case counts (`None`: exhaustive).
pub const SUITES: [(&str, Option<usize>); 11] = [
    ("lift-vs-arith", Some(200)),
    ("cor1", Some(500)),
    ("cor2-identities", Some(200)),
    ("kernels-exhaustive-3", None),
    ("spatial-oracle", None),
    ("hat-embedding", Some(200)),
    ("separation", Some(200)),
    ("chi", Some(200)),
    ("truncates", Some(200)),
    ("mobility", Some(150)),
    ("frame-calculus", Some(50)),
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("UnknownSuite: `{0}`")]
    UnknownSuite(String),
}

impl SuiteError {
    pub fn kind(&self) -> &'static str {
        "UnknownSuite"
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the default case count of randomized suites.
    pub cases: Option<usize>,
    pub max_grid: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            seed: 0,
            cases: None,
            max_grid: DEFAULT_MAX_GRID,
        }
    }
}

/// Outcome of one case. Skipped cases do not meet the suite's precondition
/// and are not counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    /// Replayable description of the first failing case.
    pub counterexample: Option<String>,
    /// Suite-specific tallies, in a fixed order.
    pub extra: Vec<(String, String)>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.fail == 0
    }

    fn from_outcomes(name: &str, seed: u64, outcomes: Vec<Outcome>) -> SuiteReport {
        let mut r = SuiteReport {
            name: name.to_string(),
            seed,
            pass: 0,
            fail: 0,
            skipped: 0,
            counterexample: None,
            extra: Vec::new(),
        };
        for o in outcomes {
            match o {
                Outcome::Pass => r.pass += 1,
                Outcome::Skip => r.skipped += 1,
                Outcome::Fail(ce) => {
                    r.fail += 1;
                    r.counterexample.get_or_insert(ce);
                }
            }
        }
        r
    }
}

/// Runs `n` seeded cases in parallel.
fn seeded<T: Send, F>(seed: u64, n: usize, case: F) -> Vec<T>
where
    F: Fn(usize, &mut CaseRng) -> T + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| case(i, &mut case_rng(seed, i)))
        .collect()
}

/// Runs one case per item in parallel.
fn exhaustive<T: Sync, R: Send, F>(items: &[T], case: F) -> Vec<R>
where
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(case).collect()
}

fn check(ok: bool, ce: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(ce())
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let default = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))?
        .1;
    let n = cfg.cases.or(default).unwrap_or(0);
    let seed = cfg.seed;
    let report = match name {
        "lift-vs-arith" => SuiteReport::from_outcomes(name, seed, rl::lift_vs_arith(seed, n, cfg.max_grid)),
        "cor1" => SuiteReport::from_outcomes(name, seed, rl::cor1(seed, n, cfg.max_grid)),
        "cor2-identities" => SuiteReport::from_outcomes(name, seed, rl::cor2(seed, n, cfg.max_grid)),
        "kernels-exhaustive-3" => SuiteReport::from_outcomes(name, seed, frames::kernels_exhaustive(3)),
        "spatial-oracle" => {
            let (outcomes, extra) = pointwise::spatial_oracle();
            let mut r = SuiteReport::from_outcomes(name, seed, outcomes);
            r.extra = extra;
            r
        }
        "hat-embedding" => SuiteReport::from_outcomes(name, seed, frames::hat_embedding(seed, n)),
        "separation" => {
            let (outcomes, extra) = pointwise::separation(seed, n);
            let mut r = SuiteReport::from_outcomes(name, seed, outcomes);
            r.extra = extra;
            r
        }
        "chi" => SuiteReport::from_outcomes(name, seed, pointwise::chi(seed, n)),
        "truncates" => {
            let (outcomes, extra) = pointwise::truncates(seed, n);
            let mut r = SuiteReport::from_outcomes(name, seed, outcomes);
            r.extra = extra;
            r
        }
        "mobility" => SuiteReport::from_outcomes(name, seed, pointwise::mobility(seed, n)),
        "frame-calculus" => SuiteReport::from_outcomes(name, seed, frames::frame_calculus(seed, n)),
        _ => unreachable!("registered suite without a runner"),
    };
    Ok(report)
}
