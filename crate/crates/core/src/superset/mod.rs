// SPDX-License-Identifier: Apache-2.0

//! S-information super-sets for Reed-Muller codes.
//!
//! A multiset T of coordinates is an S-information super-set when every
//! (|T| - S)-sub-multiset still contains an information set, so a decoder
//! survives any S missing responses. This module builds such sets (direct
//! constructions for d = 1, compositions over hyperplanes, recursive
//! builders), bounds their sizes, and verifies them exhaustively.
//!
//! Constructions return a [`SupersetResult`] whose multiset is stored as a
//! [`Plan`]; large prefix blocks are only expanded when asked for, so size
//! tables for big codes stay cheap.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::multiset::IndexMultiset;
use crate::rm::{self, RmCode};

pub mod binary;
pub mod general;
pub mod verify;

pub use binary::{
    best_2superset_binary, greedy_2superset, greedy_sets, lemma7_compose, recursive_binary, thm4_superset,
    thm5_superset, thm7_bound, u_bound,
};
pub use general::{
    best_2superset_general, condition9, lemma9_compose, recursive_general, thm10_superset, thm11_admissible,
    thm11_superset, thm8_superset, thm9_superset,
};
pub use verify::{removal_pattern_count, verify_superset, verify_superset_naive};

/// Which construction produced a super-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Lemma4,
    Repetition,
    Thm4,
    Thm5,
    Greedy,
    Thm8,
    Thm9,
    Thm10,
    Thm11,
    Lemma7,
    Lemma9,
    Union,
    RecursiveBinary,
    RecursiveGeneral,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lemma4 => "lemma4",
            Method::Repetition => "repetition",
            Method::Thm4 => "thm4",
            Method::Thm5 => "thm5",
            Method::Greedy => "greedy",
            Method::Thm8 => "thm8",
            Method::Thm9 => "thm9",
            Method::Thm10 => "thm10",
            Method::Thm11 => "thm11",
            Method::Lemma7 => "lemma7",
            Method::Lemma9 => "lemma9",
            Method::Union => "union",
            Method::RecursiveBinary => "recursive_binary",
            Method::RecursiveGeneral => "recursive_general",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the recursive builders pick their d = 1 leaves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Only the closed-form constructions; reproduces the size tables.
    #[default]
    Closed,
    /// Also tries the greedy search for 2-super-sets; sizes only shrink.
    Best,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "closed" => Ok(Mode::Closed),
            "best" => Ok(Mode::Best),
            other => Err(Error::Parse(format!("unknown mode '{other}' (expected closed|best)"))),
        }
    }
}

/// Deferred description of a multiset of point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Plan {
    Explicit(IndexMultiset),
    /// The first `count` indices of `[0, base)`.
    Prefix { base: usize, count: usize },
    /// Every index of `set` with its multiplicity scaled by `times`.
    Repeat { set: IndexMultiset, times: u32 },
    /// Multiset sum of parts over the same base.
    Union(Vec<Plan>),
    /// Part `(b, plan)` placed into the index block `[b·block, (b+1)·block)`.
    Blocks { base: usize, block: usize, parts: Vec<(usize, Plan)> },
}

impl Plan {
    pub fn size(&self) -> usize {
        match self {
            Plan::Explicit(t) => t.len(),
            Plan::Prefix { count, .. } => *count,
            Plan::Repeat { set, times } => set.len() * *times as usize,
            Plan::Union(parts) => parts.iter().map(Plan::size).sum(),
            Plan::Blocks { parts, .. } => parts.iter().map(|(_, p)| p.size()).sum(),
        }
    }

    pub fn base(&self) -> usize {
        match self {
            Plan::Explicit(t) => t.base(),
            Plan::Prefix { base, .. } | Plan::Blocks { base, .. } => *base,
            Plan::Repeat { set, .. } => set.base(),
            Plan::Union(parts) => parts.first().map_or(0, Plan::base),
        }
    }

    fn pairs_into(&self, offset: usize, out: &mut Vec<(usize, u32)>) {
        match self {
            Plan::Explicit(t) => out.extend(t.entries().iter().map(|&(i, c)| (i + offset, c))),
            Plan::Prefix { count, .. } => out.extend((0..*count).map(|i| (i + offset, 1))),
            Plan::Repeat { set, times } => out.extend(set.entries().iter().map(|&(i, c)| (i + offset, c * times))),
            Plan::Union(parts) => parts.iter().for_each(|p| p.pairs_into(offset, out)),
            Plan::Blocks { block, parts, .. } => {
                for (b, p) in parts {
                    p.pairs_into(offset + b * block, out);
                }
            }
        }
    }

    pub fn materialize(&self) -> IndexMultiset {
        let mut pairs = Vec::with_capacity(self.size());
        self.pairs_into(0, &mut pairs);
        IndexMultiset::from_pairs(self.base(), pairs).expect("plans stay inside their base")
    }
}

/// A super-set for RM_q(d, m) with straggler budget S.
#[derive(Clone, Debug)]
pub struct SupersetResult {
    field: Field,
    d: u32,
    m: u32,
    s: usize,
    method: Method,
    provenance: String,
    plan: Plan,
    verified: Option<bool>,
}

impl SupersetResult {
    pub(crate) fn new(field: &Field, d: u32, m: u32, s: usize, method: Method, provenance: String, plan: Plan) -> Self {
        SupersetResult { field: field.clone(), d, m, s, method, provenance, plan, verified: None }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn method(&self) -> Method {
        self.method
    }
    /// Construction tree, e.g. `lemma7(lemma4,thm4)`.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }
    pub fn plan(&self) -> &Plan {
        &self.plan
    }
    pub fn size(&self) -> usize {
        self.plan.size()
    }
    pub fn verified(&self) -> Option<bool> {
        self.verified
    }
    pub fn multiset(&self) -> IndexMultiset {
        self.plan.materialize()
    }
    pub fn code(&self) -> Result<RmCode> {
        RmCode::new(&self.field, self.d, self.m)
    }

    /// Runs the exhaustive check and records the outcome.
    pub fn verify(&mut self) -> Result<bool> {
        let ok = verify_superset(&self.code()?, self.s, &self.multiset())?;
        self.verified = Some(ok);
        Ok(ok)
    }

    pub(crate) fn with_method(mut self, method: Method, provenance: String) -> Self {
        self.method = method;
        self.provenance = provenance;
        self
    }

    /// `index:multiplicity` lines preceded by a `# rm q d m S=s` header.
    pub fn to_text(&self) -> String {
        let mut out = format!("# rm {} {} {} S={}\n", self.q(), self.d, self.m, self.s);
        out.push_str(&self.multiset().to_text());
        out
    }

    /// One-line summary `method size verified`.
    pub fn summary(&self) -> String {
        let v = match self.verified {
            Some(true) => "verified",
            Some(false) => "failed",
            None => "unverified",
        };
        format!("{} {} {}", self.method, self.size(), v)
    }
}

pub(crate) fn check_params(q: u32, d: u32, m: u32, s: usize) -> Result<()> {
    let dmin = rm::dmin(q, d, m)?;
    if s == 0 || s as u64 >= dmin {
        return Err(Error::StragglerBudget { s, dmin });
    }
    Ok(())
}

pub(crate) fn code_len(q: u32, m: u32) -> Result<usize> {
    (q as u64)
        .checked_pow(m)
        .filter(|&n| n <= usize::MAX as u64 / 2)
        .map(|n| n as usize)
        .ok_or_else(|| Error::InvalidParameters(format!("q^m = {q}^{m} is too large")))
}

/// λ(q, d, m) + S, the smallest size any S-super-set can have.
pub fn lemma3_lower_bound(q: u32, d: u32, m: u32, s: usize) -> Result<u64> {
    Ok(rm::lambda(q, d, m)? + s as u64)
}

/// q^m - dmin + S + 1, the size of the prefix super-set.
pub fn lemma4_size(q: u32, d: u32, m: u32, s: usize) -> Result<u64> {
    check_params(q, d, m, s)?;
    Ok((q as u64).pow(m) - rm::dmin(q, d, m)? + s as u64 + 1)
}

/// (S+1)·λ, the size of the repeated information set.
pub fn repetition_size(q: u32, d: u32, m: u32, s: usize) -> Result<u64> {
    Ok((s as u64 + 1) * rm::lambda(q, d, m)?)
}

/// The first q^m - dmin + S + 1 points. Any q^m - dmin + 1 columns contain an
/// information set, so this survives any S removals.
pub fn lemma4_superset(field: &Field, d: u32, m: u32, s: usize) -> Result<SupersetResult> {
    let count = lemma4_size(field.q(), d, m, s)? as usize;
    let base = code_len(field.q(), m)?;
    Ok(SupersetResult::new(field, d, m, s, Method::Lemma4, "lemma4".into(), Plan::Prefix { base, count }))
}

/// The canonical information set repeated S+1 times.
pub fn repetition_superset(field: &Field, d: u32, m: u32, s: usize) -> Result<SupersetResult> {
    check_params(field.q(), d, m, s)?;
    let info = RmCode::new(field, d, m)?.info_set();
    let plan = Plan::Repeat { set: info, times: s as u32 + 1 };
    Ok(SupersetResult::new(field, d, m, s, Method::Repetition, "repetition".into(), plan))
}

/// Multiset sum of an S1- and an S2-super-set of the same code.
pub fn lemma8_union(a: &SupersetResult, b: &SupersetResult) -> Result<SupersetResult> {
    if a.field != b.field || a.d != b.d || a.m != b.m {
        return Err(Error::InvalidParameters("union parts must belong to the same code".into()));
    }
    let s = a.s + b.s;
    check_params(a.q(), a.d, a.m, s)?;
    let mut parts = Vec::new();
    for p in [&a.plan, &b.plan] {
        match p {
            Plan::Union(inner) => parts.extend(inner.iter().cloned()),
            other => parts.push(other.clone()),
        }
    }
    let provenance = format!("union({},{})", a.provenance, b.provenance);
    Ok(SupersetResult::new(&a.field, a.d, a.m, s, Method::Union, provenance, Plan::Union(parts)))
}

/// Left-nested union of all items.
pub(crate) fn union_all(items: &[&SupersetResult]) -> Result<SupersetResult> {
    let (first, rest) = items
        .split_first()
        .ok_or_else(|| Error::InvalidParameters("union of no parts".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, item| lemma8_union(&acc, item))
}

/// Smallest result over every applicable construction.
pub fn best_superset(field: &Field, d: u32, m: u32, s: usize, mode: Mode) -> Result<SupersetResult> {
    check_params(field.q(), d, m, s)?;
    let mut best = recursive_general(field, d, m, s, mode)?;
    for alt in [lemma4_superset(field, d, m, s)?, repetition_superset(field, d, m, s)?] {
        if alt.size() < best.size() {
            best = alt;
        }
    }
    Ok(best)
}
