// SPDX-License-Identifier: Apache-2.0

//! Straggler patterns, repeated trials and scheme comparison.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{poly_random, run_once, Scheme, SchemeConfig, SimReport};
use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::privacy::{self, subsets, PrivacyCode};
use crate::superset::{repetition_superset, Mode};

/// Exhaustive enumeration is used up to this many patterns.
pub const EXHAUSTIVE_PATTERN_LIMIT: u128 = 10_000;
/// Patterns drawn when enumeration is too large or sampling is requested.
pub const SAMPLED_PATTERNS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternMode {
    /// Every subset of size ≤ S, falling back to sampling above the limit.
    Exhaustive,
    /// Seeded uniform subsets of size exactly S.
    Sampled,
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Straggler sets to test for N workers and budget S.
pub fn straggler_patterns(n: usize, s: usize, mode: PatternMode, seed: u64) -> Result<Vec<Vec<usize>>> {
    if s >= n.max(1) && s > 0 {
        return Err(Error::InvalidParameters(format!("S={s} must be below N={n}")));
    }
    let count: u128 = (0..=s).map(|k| binom(n, k)).sum();
    if mode == PatternMode::Exhaustive && count <= EXHAUSTIVE_PATTERN_LIMIT {
        return Ok((0..=s).flat_map(|k| subsets(n, k)).collect());
    }
    if s == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..SAMPLED_PATTERNS)
        .map(|_| {
            let mut p = sample(&mut rng, n, s).into_vec();
            p.sort_unstable();
            p
        })
        .collect())
}

/// Runs `trials` seeded (x, k, f) triples against every straggler pattern.
/// The report carries the first decoded value and whether all runs decoded f(x).
pub fn simulate(config: &SchemeConfig, trials: usize, mode: PatternMode, seed: u64) -> Result<SimReport> {
    let patterns = straggler_patterns(config.workers(), config.s(), mode, seed)?;
    let mut first: Option<SimReport> = None;
    let mut ok = true;
    for t in 0..trials.max(1) as u64 {
        let trial_seed = seed.wrapping_add(t.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let x = privacy::random_vector(config.field(), config.code().n(), &mut rng);
        let f = poly_random(config.field(), config.code().n(), config.d(), trial_seed)?;
        for p in &patterns {
            let r = run_once(config, &x, &f, trial_seed, p)?;
            ok &= r.decoded_ok;
            first.get_or_insert(r);
        }
    }
    let mut report = first.expect("at least one run");
    report.straggler_patterns_tested = patterns.len();
    report.decoded_ok = ok;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub scheme: String,
    pub q: u32,
    pub n: usize,
    pub r: usize,
    pub d: u32,
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "N")]
    pub workers: usize,
    #[serde(rename = "D")]
    pub download: usize,
    pub m: usize,
    pub upload: usize,
    pub success_rate: f64,
}

impl CompareRow {
    pub fn ok(&self) -> bool {
        self.success_rate == 1.0
    }
}

fn row(name: &str, cfg: &SchemeConfig, trials: usize, seed: u64) -> Result<CompareRow> {
    let patterns = straggler_patterns(cfg.workers(), cfg.s(), PatternMode::Exhaustive, seed)?;
    let mut good = 0usize;
    let mut total = 0usize;
    let mut download = 0;
    for t in 0..trials.max(1) as u64 {
        let trial_seed = seed.wrapping_add(t);
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let x: Vec<Fe> = privacy::random_vector(cfg.field(), cfg.code().n(), &mut rng);
        let f = poly_random(cfg.field(), cfg.code().n(), cfg.d(), trial_seed)?;
        for p in &patterns {
            let r = run_once(cfg, &x, &f, trial_seed, p)?;
            good += r.decoded_ok as usize;
            total += 1;
            download = r.download;
        }
    }
    let code = cfg.code();
    Ok(CompareRow {
        scheme: name.to_string(),
        q: cfg.field().q(),
        n: code.n(),
        r: code.r(),
        d: cfg.d(),
        s: cfg.s(),
        workers: cfg.workers(),
        download,
        m: code.m(),
        upload: cfg.upload(),
        success_rate: good as f64 / total as f64,
    })
}

/// One row per scheme applicable to (code, d, S). Without stragglers:
/// trivial, infoset and superset; otherwise superset, the (S+1)-fold
/// repetition of the information set, and LCC when q is large enough.
pub fn compare_schemes(code: &PrivacyCode, d: u32, s: usize, mode: Mode, trials: usize, seed: u64) -> Result<Vec<CompareRow>> {
    let mut rows = Vec::new();
    let field = code.field();
    let m = code.m() as u32;
    if s == 0 {
        for scheme in [Scheme::Trivial, Scheme::Infoset, Scheme::Superset] {
            let cfg = SchemeConfig::new(code.clone(), d, 0, scheme, mode)?;
            rows.push(row(scheme.name(), &cfg, trials, seed)?);
        }
        return Ok(rows);
    }
    let cfg = SchemeConfig::new(code.clone(), d, s, Scheme::Superset, mode)?;
    rows.push(row("superset", &cfg, trials, seed)?);
    let rep = repetition_superset(field, d, m, s)?;
    let cfg = SchemeConfig::with_superset(code.clone(), d, rep)?;
    rows.push(row("repetition", &cfg, trials, seed)?);
    match SchemeConfig::new(code.clone(), d, s, Scheme::Lcc, mode) {
        Ok(cfg) => rows.push(row("lcc", &cfg, trials, seed)?),
        Err(Error::Precondition(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(rows)
}
