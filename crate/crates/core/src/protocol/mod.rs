// SPDX-License-Identifier: Apache-2.0

//! In-process simulation of the storage and computation phases.
//!
//! The user holds `x` and the key `k` and uploads `x̃` (or its syndrome). The
//! administrator knows `x̃`, `G`, `f` and the worker responses, never `x` or
//! `k`: [`Admin`] has no way to receive them. Each worker evaluates `f` on a
//! share `x̃ - tG`, so worker `t` returns `g(t) = f(x̃ - tG)`, a polynomial of
//! degree at most d in t with `g(k) = f(x)`.

pub mod poly;
pub mod sim;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::Matrix;
use crate::multiset::IndexMultiset;
use crate::parallel::pool;
use crate::privacy::{self, PrivacyCode};
use crate::rm::{Reconstructor, RmCode};
use crate::superset::{best_superset, Mode, SupersetResult};

pub use poly::{interpolate, poly_random, MultiPoly};
pub use sim::{compare_schemes, simulate, straggler_patterns, CompareRow, PatternMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Trivial,
    Infoset,
    Superset,
    Lcc,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Trivial => "trivial",
            Scheme::Infoset => "infoset",
            Scheme::Superset => "superset",
            Scheme::Lcc => "lcc",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scheme> {
        match s {
            "trivial" => Ok(Scheme::Trivial),
            "infoset" => Ok(Scheme::Infoset),
            "superset" => Ok(Scheme::Superset),
            "lcc" => Ok(Scheme::Lcc),
            other => Err(Error::Parse(format!("unknown scheme `{other}` (expected trivial, infoset, superset or lcc)"))),
        }
    }
}

/// A fully specified scheme: privacy code, degree bound, straggler budget.
#[derive(Debug, Clone)]
pub struct SchemeConfig {
    code: PrivacyCode,
    d: u32,
    s: usize,
    scheme: Scheme,
    syndrome_upload: bool,
    /// RM_q(d, m) over the key space (RM_q(0, m) for the trivial scheme).
    rm: RmCode,
    /// Worker points for the super-set scheme.
    workers: Option<IndexMultiset>,
    superset: Option<SupersetResult>,
}

impl SchemeConfig {
    pub fn new(code: PrivacyCode, d: u32, s: usize, scheme: Scheme, mode: Mode) -> Result<SchemeConfig> {
        let field = code.field().clone();
        let (q, m) = (field.q(), code.m() as u32);
        let rm_degree = if scheme == Scheme::Trivial { 0 } else { d };
        if scheme != Scheme::Trivial && d as u64 >= m as u64 * (q as u64 - 1) {
            return Err(Error::InvalidParameters(format!("d={d} must be below m(q-1) = {}", m * (q - 1))));
        }
        if matches!(scheme, Scheme::Trivial | Scheme::Infoset) && s > 0 {
            return Err(Error::Precondition(format!("the {} scheme tolerates no stragglers (S={s})", scheme.name())));
        }
        if scheme == Scheme::Lcc && s == 0 {
            return Err(Error::Precondition("the lcc scheme needs S >= 1".into()));
        }
        let rm = RmCode::new(&field, rm_degree, m)?;
        let mut cfg = SchemeConfig { code, d, s, scheme, syndrome_upload: false, rm, workers: None, superset: None };
        match scheme {
            Scheme::Superset if s == 0 => cfg.workers = Some(cfg.rm.info_set()),
            Scheme::Superset => {
                let t = best_superset(&field, d, m, s, mode)?;
                cfg.workers = Some(t.multiset());
                cfg.superset = Some(t);
            }
            Scheme::Lcc => {
                let n = lcc_workers(cfg.rm.lambda(), d, s);
                if n > q as usize {
                    return Err(Error::Precondition(format!("lcc needs q >= N = {n}, got q={q}")));
                }
            }
            _ => {}
        }
        Ok(cfg)
    }

    /// Super-set scheme on an explicit S-super-set `t` (for example the repetition set).
    pub fn with_superset(code: PrivacyCode, d: u32, t: SupersetResult) -> Result<SchemeConfig> {
        let s = t.s();
        if t.field() != code.field() || t.m() as usize != code.m() || t.d() != d {
            return Err(Error::InvalidParameters("super-set does not match the key-space code".into()));
        }
        let rm = RmCode::new(code.field(), d, code.m() as u32)?;
        Ok(SchemeConfig {
            code,
            d,
            s,
            scheme: Scheme::Superset,
            syndrome_upload: false,
            rm,
            workers: Some(t.multiset()),
            superset: Some(t),
        })
    }

    pub fn with_syndrome_upload(mut self, on: bool) -> SchemeConfig {
        self.syndrome_upload = on;
        self
    }

    pub fn code(&self) -> &PrivacyCode {
        &self.code
    }
    pub fn field(&self) -> &Field {
        self.code.field()
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
    pub fn superset(&self) -> Option<&SupersetResult> {
        self.superset.as_ref()
    }
    pub fn lambda(&self) -> usize {
        self.rm.lambda()
    }

    /// Number of workers N.
    pub fn workers(&self) -> usize {
        match self.scheme {
            Scheme::Trivial => self.rm.len(),
            Scheme::Infoset => self.rm.lambda(),
            Scheme::Superset => self.workers.as_ref().map_or(0, IndexMultiset::len),
            Scheme::Lcc => lcc_workers(self.rm.lambda(), self.d, self.s),
        }
    }

    /// Symbols the user uploads in the storage phase.
    pub fn upload(&self) -> usize {
        if self.syndrome_upload {
            self.code.n() - self.code.m()
        } else {
            self.code.n()
        }
    }
}

/// `(λ - 1)d + S + 1`.
pub fn lcc_workers(lambda: usize, d: u32, s: usize) -> usize {
    (lambda - 1) * d as usize + s + 1
}

/// Outcome of one run of a scheme with a given straggler pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimReport {
    pub scheme: Scheme,
    #[serde(rename = "N")]
    pub workers: usize,
    #[serde(rename = "D")]
    pub download: usize,
    #[serde(rename = "m")]
    pub key_symbols: usize,
    pub upload: usize,
    pub straggler_patterns_tested: usize,
    pub decoded_ok: bool,
    pub value: Fe,
}

/// `g(t) = f(x̃ - tG)`.
pub fn eval_g(config: &SchemeConfig, x_tilde: &[Fe], f: &MultiPoly, t: &[Fe]) -> Result<Fe> {
    f.eval(&share(config.code.field(), config.code.generator(), x_tilde, t)?)
}

fn share(field: &Field, g: &Matrix, x_tilde: &[Fe], t: &[Fe]) -> Result<Vec<Fe>> {
    let tg = g.left_mul_vec(t)?;
    Ok(x_tilde.iter().zip(&tg).map(|(&a, &b)| field.sub(a, b)).collect())
}

/// What the user sends in the storage phase.
#[derive(Debug, Clone)]
pub enum Upload {
    Direct(Vec<Fe>),
    Syndrome(Vec<Fe>),
}

impl Upload {
    pub fn symbols(&self) -> usize {
        match self {
            Upload::Direct(v) | Upload::Syndrome(v) => v.len(),
        }
    }
}

/// The data owner: holds `x` and the key.
pub struct User {
    x: Vec<Fe>,
    k: Vec<Fe>,
}

impl User {
    /// Storage phase. With the syndrome path the key is the one implied by
    /// the public coset representative; otherwise it is drawn from `seed`.
    pub fn store(config: &SchemeConfig, x: Vec<Fe>, seed: u64) -> Result<(User, Upload)> {
        let code = &config.code;
        if config.syndrome_upload {
            let s = privacy::syndrome(code, &x)?;
            let x_tilde = privacy::coset_representative(code, &s)?;
            let k = privacy::recover_key(code, &x, &x_tilde)?;
            Ok((User { x, k }, Upload::Syndrome(s)))
        } else {
            let k = privacy::sample_key(code, seed);
            let enc = privacy::encode(code, &x, &k)?;
            Ok((User { x, k }, Upload::Direct(enc.x_tilde)))
        }
    }

    pub fn key(&self) -> &[Fe] {
        &self.k
    }

    pub fn data(&self) -> &[Fe] {
        &self.x
    }

    /// Final step: `g(k)` from the administrator's answer.
    pub fn finish(&self, config: &SchemeConfig, answer: &[Fe]) -> Result<Fe> {
        let rm = &config.rm;
        let k_index = rm.point_index(&self.k)?;
        match config.scheme {
            Scheme::Trivial => answer
                .get(k_index)
                .copied()
                .ok_or_else(|| Error::Decode(format!("answer of length {} has no entry {k_index}", answer.len()))),
            _ => {
                let rec = Reconstructor::new(rm, &rm.info_set())?;
                Ok(rec.reconstruct(answer, &[k_index])?[0])
            }
        }
    }
}

/// The administrator. It sees only public data, `x̃` and worker responses.
pub struct Admin<'a> {
    config: &'a SchemeConfig,
    f: &'a MultiPoly,
    x_tilde: Vec<Fe>,
    downloaded: usize,
}

impl<'a> Admin<'a> {
    pub fn receive(config: &'a SchemeConfig, f: &'a MultiPoly, upload: &Upload) -> Result<Admin<'a>> {
        let x_tilde = match upload {
            Upload::Direct(v) => v.clone(),
            Upload::Syndrome(s) => privacy::coset_representative(&config.code, s)?,
        };
        Ok(Admin { config, f, x_tilde, downloaded: 0 })
    }

    pub fn x_tilde(&self) -> &[Fe] {
        &self.x_tilde
    }

    /// The polynomial workers are asked to evaluate.
    pub fn function(&self) -> &MultiPoly {
        self.f
    }

    /// Symbols sent to the user so far.
    pub fn downloaded(&self) -> usize {
        self.downloaded
    }

    /// Shares handed out to workers, one per worker position.
    pub fn shares(&self) -> Result<Vec<Vec<Fe>>> {
        let cfg = self.config;
        let (field, g) = (cfg.code.field(), cfg.code.generator());
        match cfg.scheme {
            Scheme::Lcc => self.lcc_shares(),
            _ => self.worker_points().iter().map(|&p| share(field, g, &self.x_tilde, &cfg.rm.point(p))).collect(),
        }
    }

    /// Key-space point index assigned to each worker (not used by LCC).
    fn worker_points(&self) -> Vec<usize> {
        let cfg = self.config;
        match cfg.scheme {
            Scheme::Trivial => (0..cfg.rm.len()).collect(),
            Scheme::Infoset => cfg.rm.info_set().distinct(),
            Scheme::Superset => cfg.workers.as_ref().map_or_else(Vec::new, IndexMultiset::expanded),
            Scheme::Lcc => Vec::new(),
        }
    }

    fn lcc_shares(&self) -> Result<Vec<Vec<Fe>>> {
        let cfg = self.config;
        let field = cfg.code.field();
        let info = cfg.rm.info_set().distinct();
        let lambda = info.len();
        let omegas = &field.elements()[..lambda];
        let nodes: Vec<Vec<Fe>> = info
            .iter()
            .map(|&p| share(field, cfg.code.generator(), &self.x_tilde, &cfg.rm.point(p)))
            .collect::<Result<_>>()?;
        let n = lcc_workers(lambda, cfg.d, cfg.s);
        field.elements()[..n]
            .iter()
            .map(|&a| {
                let w = poly::lagrange_weights(field, omegas, a)?;
                let mut out = vec![Fe::ZERO; cfg.code.n()];
                for (wi, node) in w.iter().zip(&nodes) {
                    crate::linalg::axpy(field, &mut out, *wi, node);
                }
                Ok(out)
            })
            .collect()
    }

    /// Computation phase. `responses[j]` is worker j's answer, `None` for a straggler.
    pub fn answer(&mut self, responses: &[Option<Fe>]) -> Result<Vec<Fe>> {
        let cfg = self.config;
        let answer = match cfg.scheme {
            Scheme::Trivial | Scheme::Infoset => responses
                .iter()
                .map(|r| r.ok_or_else(|| Error::Decode("missing response in a straggler-free scheme".into())))
                .collect::<Result<Vec<_>>>()?,
            Scheme::Superset => self.superset_answer(responses)?,
            Scheme::Lcc => self.lcc_answer(responses)?,
        };
        self.downloaded += answer.len();
        Ok(answer)
    }

    fn superset_answer(&self, responses: &[Option<Fe>]) -> Result<Vec<Fe>> {
        let cfg = self.config;
        let points = self.worker_points();
        let mut basis = IncrementalBasis::new(cfg.rm.field(), cfg.rm.lambda());
        let mut chosen: Vec<(usize, Fe)> = Vec::new();
        for (&p, r) in points.iter().zip(responses) {
            let Some(v) = r else { continue };
            if chosen.iter().any(|&(c, _)| c == p) {
                continue;
            }
            if basis.insert(cfg.rm.newton_column(p)) {
                chosen.push((p, *v));
                if chosen.len() == cfg.rm.lambda() {
                    break;
                }
            }
        }
        if chosen.len() < cfg.rm.lambda() {
            return Err(Error::Decode("surviving workers contain no information set".into()));
        }
        chosen.sort_unstable_by_key(|&(p, _)| p);
        let info = IndexMultiset::from_indices(cfg.rm.len(), chosen.iter().map(|&(p, _)| p))?;
        let vals: Vec<Fe> = chosen.iter().map(|&(_, v)| v).collect();
        cfg.rm.reconstruct_evals(&info, &vals, &cfg.rm.info_set().distinct())
    }

    fn lcc_answer(&self, responses: &[Option<Fe>]) -> Result<Vec<Fe>> {
        let cfg = self.config;
        let field = cfg.code.field();
        let lambda = cfg.rm.lambda();
        let (xs, ys): (Vec<Fe>, Vec<Fe>) =
            field.elements().iter().zip(responses).filter_map(|(&a, r)| r.map(|v| (a, v))).unzip();
        let deg = (lambda - 1) * cfg.d as usize;
        if xs.len() <= deg {
            return Err(Error::Decode(format!("{} responses cannot determine a degree-{deg} polynomial", xs.len())));
        }
        let coeffs = interpolate(field, &xs, &ys)?;
        if coeffs.iter().skip(deg + 1).any(|c| !c.is_zero()) {
            return Err(Error::Decode(format!("interpolated polynomial exceeds degree {deg}")));
        }
        Ok(field.elements()[..lambda].iter().map(|&w| poly::eval_univariate(field, &coeffs, w)).collect())
    }
}

/// Row-reduced set of vectors supporting an "is this independent?" query.
struct IncrementalBasis {
    field: Field,
    rows: Vec<(usize, Vec<Fe>)>,
}

impl IncrementalBasis {
    fn new(field: &Field, cap: usize) -> Self {
        IncrementalBasis { field: field.clone(), rows: Vec::with_capacity(cap) }
    }

    fn insert(&mut self, mut v: Vec<Fe>) -> bool {
        let f = &self.field;
        for (p, row) in &self.rows {
            let c = v[*p];
            if !c.is_zero() {
                crate::linalg::axpy(f, &mut v, f.neg(c), row);
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[p]).expect("nonzero pivot");
        for c in v.iter_mut() {
            *c = f.mul(*c, inv);
        }
        self.rows.push((p, v));
        true
    }
}

/// One run: storage, worker evaluation with `stragglers` suppressed, decoding.
pub fn run_once(config: &SchemeConfig, x: &[Fe], f: &MultiPoly, seed: u64, stragglers: &[usize]) -> Result<SimReport> {
    if stragglers.len() > config.s {
        return Err(Error::InvalidParameters(format!(
            "{} stragglers exceed the budget S={}",
            stragglers.len(),
            config.s
        )));
    }
    let n_workers = config.workers();
    if let Some(&bad) = stragglers.iter().find(|&&j| j >= n_workers) {
        return Err(Error::IndexOutOfRange { index: bad, limit: n_workers });
    }
    let (user, upload) = User::store(config, x.to_vec(), seed)?;
    let mut admin = Admin::receive(config, f, &upload)?;
    let shares = admin.shares()?;
    debug_assert_eq!(shares.len(), n_workers);
    let job = admin.function();
    let evaluated: Vec<Fe> =
        pool().install(|| shares.par_iter().map(|sh| job.eval(sh)).collect::<Result<Vec<_>>>())?;
    let responses: Vec<Option<Fe>> =
        evaluated.into_iter().enumerate().map(|(j, v)| (!stragglers.contains(&j)).then_some(v)).collect();
    let answer = admin.answer(&responses)?;
    let value = user.finish(config, &answer)?;
    Ok(SimReport {
        scheme: config.scheme,
        workers: n_workers,
        download: admin.downloaded(),
        key_symbols: config.code.m(),
        upload: upload.symbols(),
        straggler_patterns_tested: 1,
        decoded_ok: value == f.eval(user.data())?,
        value,
    })
}

pub fn run_trivial(config: &SchemeConfig, x: &[Fe], f: &MultiPoly, seed: u64) -> Result<SimReport> {
    expect_scheme(config, Scheme::Trivial)?;
    run_once(config, x, f, seed, &[])
}

pub fn run_infoset(config: &SchemeConfig, x: &[Fe], f: &MultiPoly, seed: u64) -> Result<SimReport> {
    expect_scheme(config, Scheme::Infoset)?;
    run_once(config, x, f, seed, &[])
}

pub fn run_superset(config: &SchemeConfig, x: &[Fe], f: &MultiPoly, seed: u64, stragglers: &[usize]) -> Result<SimReport> {
    expect_scheme(config, Scheme::Superset)?;
    run_once(config, x, f, seed, stragglers)
}

pub fn run_lcc(config: &SchemeConfig, x: &[Fe], f: &MultiPoly, seed: u64, stragglers: &[usize]) -> Result<SimReport> {
    expect_scheme(config, Scheme::Lcc)?;
    run_once(config, x, f, seed, stragglers)
}

fn expect_scheme(config: &SchemeConfig, want: Scheme) -> Result<()> {
    if config.scheme != want {
        return Err(Error::InvalidParameters(format!("config is for {}, not {}", config.scheme.name(), want.name())));
    }
    Ok(())
}
