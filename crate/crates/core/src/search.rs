//! Reproducible search for polynomials whose curve attains `a = L(d)`.
//!
//! Trial `t` draws its polynomial from a ChaCha8 stream keyed by
//! `(seed, t)`, so the trial sequence does not depend on the worker count.
//! Trials run in batches; within a batch the witness with the smallest
//! trial index wins and statistics cover exactly the trials up to it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{FpPoly, PrimeModulus};
use crate::bounds::{lower_bound_single, upper_bound};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::holo::genus;
use crate::report::a_number;

const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
const BATCH_PER_THREAD: u64 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Random,
    ExhaustiveSmall,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Self::Random),
            "exhaustive-small" => Ok(Self::ExhaustiveSmall),
            other => Err(Error::Search(format!("unknown strategy {other:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Random => "random",
            Self::ExhaustiveSmall => "exhaustive-small",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub p: PrimeModulus,
    pub d: u64,
    pub budget: u64,
    pub seed: u64,
    pub threads: usize,
    pub strategy: Strategy,
}

impl SearchConfig {
    pub fn new(p: PrimeModulus, d: u64, budget: u64, seed: u64) -> Result<Self> {
        let cfg = Self { p, d, budget, seed, threads: 1, strategy: Strategy::Random };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::Search("budget must be at least 1".into()));
        }
        if self.threads == 0 {
            return Err(Error::Search("threads must be at least 1".into()));
        }
        if self.d == 0 || self.d.is_multiple_of(self.p.get()) {
            return Err(Error::DegreeDivisibleByP { degree: self.d, p: self.p.get() });
        }
        if self.strategy == Strategy::ExhaustiveSmall && exhaustive_size(self.p, self.d).is_none() {
            return Err(Error::Search(format!(
                "exhaustive search over degree {} mod {} exceeds {EXHAUSTIVE_LIMIT} polynomials",
                self.d, self.p
            )));
        }
        Ok(())
    }
}

/// Exponents below `d` that carry a free coefficient: zero and every
/// positive exponent not divisible by `p`.
fn free_exponents(p: PrimeModulus, d: u64) -> Vec<usize> {
    (0..d).filter(|&e| e == 0 || e % p.get() != 0).map(|e| e as usize).collect()
}

/// Number of reduced polynomials of degree exactly `d`, if at most the
/// exhaustive limit.
pub fn exhaustive_size(p: PrimeModulus, d: u64) -> Option<u64> {
    let mut total = p.get() - 1;
    for _ in free_exponents(p, d) {
        total = total.checked_mul(p.get()).filter(|&t| t <= EXHAUSTIVE_LIMIT)?;
    }
    (total <= EXHAUSTIVE_LIMIT).then_some(total)
}

/// Degree exactly `d`, leading coefficient uniform in `F_p^*`, every other
/// coefficient uniform in `F_p` except at positive exponents divisible by
/// `p`, which are zero.
pub fn random_poly<R: Rng + ?Sized>(p: PrimeModulus, d: u64, rng: &mut R) -> FpPoly {
    let q = p.get();
    let mut coeffs = vec![0u64; d as usize + 1];
    for e in free_exponents(p, d) {
        coeffs[e] = rng.gen_range(0..q);
    }
    coeffs[d as usize] = rng.gen_range(1..q);
    FpPoly::from_coeffs(p, coeffs)
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// The `index`-th reduced polynomial of degree `d` in mixed-radix order:
/// leading coefficient varies fastest, then free coefficients by exponent.
pub fn enumerate_poly(p: PrimeModulus, d: u64, mut index: u64) -> FpPoly {
    let q = p.get();
    let mut coeffs = vec![0u64; d as usize + 1];
    coeffs[d as usize] = 1 + index % (q - 1);
    index /= q - 1;
    for e in free_exponents(p, d) {
        coeffs[e] = index % q;
        index /= q;
    }
    FpPoly::from_coeffs(p, coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub poly: String,
    pub a: u64,
    #[serde(rename = "L")]
    pub lower_bound: u64,
    pub attained: bool,
}

pub const TRIAL_CSV_HEADER: &str = "trial,poly,a,L,attained";

impl TrialRecord {
    pub fn to_csv_row(&self) -> String {
        format!("{},\"{}\",{},{},{}", self.trial, self.poly, self.a, self.lower_bound, self.attained)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchWitness {
    pub curve: Curve,
    pub a: u64,
    #[serde(rename = "L")]
    pub lower_bound: u64,
    pub trial: u64,
    pub trials_used: u64,
    pub seed: u64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub p: u64,
    pub d: u64,
    pub genus: u64,
    pub lower_bound: u64,
    pub upper_bound: u64,
    pub strategy: Strategy,
    pub seed: u64,
    pub budget: u64,
    pub trials: u64,
    pub min_a: Option<u64>,
    pub max_a: Option<u64>,
    pub histogram: BTreeMap<u64, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub witness: Option<SearchWitness>,
    pub stats: SearchStats,
    #[serde(skip)]
    pub log: Vec<TrialRecord>,
    pub elapsed_ms: f64,
}

fn trial_curve(cfg: &SearchConfig, trial: u64) -> Result<Curve> {
    let f = match cfg.strategy {
        Strategy::Random => random_poly(cfg.p, cfg.d, &mut trial_rng(cfg.seed, trial)),
        Strategy::ExhaustiveSmall => enumerate_poly(cfg.p, cfg.d, trial),
    };
    Curve::new(f, false)
}

/// Runs trials until one attains `L(d)` or the budget (capped at the number
/// of polynomials for the exhaustive strategy) runs out.
pub fn search_minimal(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let (p, d) = (cfg.p, cfg.d);
    let lower = lower_bound_single(p, d);
    let total = match cfg.strategy {
        Strategy::Random => cfg.budget,
        Strategy::ExhaustiveSmall => cfg.budget.min(exhaustive_size(p, d).expect("validated")),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Search(e.to_string()))?;

    let mut stats = SearchStats {
        p: p.get(),
        d,
        genus: genus(p, d)?,
        lower_bound: lower,
        upper_bound: upper_bound(p, d, 0),
        strategy: cfg.strategy,
        seed: cfg.seed,
        budget: cfg.budget,
        trials: 0,
        min_a: None,
        max_a: None,
        histogram: BTreeMap::new(),
    };
    let mut log = Vec::new();
    let mut found: Option<(Curve, u64, u64)> = None;
    let batch = if cfg.threads == 1 { 1 } else { cfg.threads as u64 * BATCH_PER_THREAD };

    let mut next = 0;
    while next < total && found.is_none() {
        let end = (next + batch).min(total);
        let results: Vec<Result<(Curve, u64)>> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|t| {
                    let curve = trial_curve(cfg, t)?;
                    let a = a_number(&curve)?;
                    Ok((curve, a))
                })
                .collect()
        });
        for (t, res) in (next..end).zip(results) {
            let (curve, a) = res?;
            stats.trials += 1;
            stats.min_a = Some(stats.min_a.map_or(a, |m| m.min(a)));
            stats.max_a = Some(stats.max_a.map_or(a, |m| m.max(a)));
            *stats.histogram.entry(a).or_default() += 1;
            log.push(TrialRecord { trial: t, poly: curve.f().to_string(), a, lower_bound: lower, attained: a == lower });
            if a == lower {
                found = Some((curve, a, t));
                break;
            }
        }
        next = end;
    }

    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let witness = found.map(|(curve, a, trial)| SearchWitness {
        curve,
        a,
        lower_bound: lower,
        trial,
        trials_used: stats.trials,
        seed: cfg.seed,
        elapsed_ms,
    });
    Ok(SearchOutcome { witness, stats, log, elapsed_ms })
}
