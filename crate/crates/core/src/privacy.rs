// SPDX-License-Identifier: Apache-2.0

//! Storage-phase privatisation `x̃ = x + kG` and its audit.
//!
//! If every r columns of G are independent (the code generated by G has dual
//! distance at least r+1) then any r coordinates of x are independent of x̃.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::Matrix;
use crate::parallel::pool;

/// Subset counts up to this are certified exhaustively.
pub const EXHAUSTIVE_CERTIFICATE_LIMIT: u128 = 1_000_000;
/// Random r-subsets drawn when the exhaustive certificate is too large.
pub const SAMPLED_CERTIFICATE_SUBSETS: usize = 100_000;
/// Work limit (subsets · q^(r+m)) for [`audit_subset_privacy`].
pub const AUDIT_LIMIT: u128 = 1 << 28;
/// Limit on q^(n+m) for the brute-force auditors.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// r × n Vandermonde matrix on the first n canonical elements (q ≥ n).
    Vandermonde,
    /// Parity-check matrix of the narrow-sense binary BCH code of designed
    /// distance r+1 and length 2^t - 1.
    DualBch,
    /// Rows `e_i - e_n`: the dual is the repetition code, so r = n-1.
    Parity,
    Explicit(Matrix),
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "vandermonde" => Ok(Family::Vandermonde),
            "dual_bch" | "bch" => Ok(Family::DualBch),
            "parity" => Ok(Family::Parity),
            other => Err(Error::Parse(format!(
                "unknown code family `{other}` (expected vandermonde, dual_bch or parity)"
            ))),
        }
    }
}

/// An [n, m] code whose generator G certifies r-subset privacy.
#[derive(Debug, Clone)]
pub struct PrivacyCode {
    field: Field,
    g: Matrix,
    h: Matrix,
    r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EncodedData {
    pub x_tilde: Vec<Fe>,
    pub syndrome: Option<Vec<Fe>>,
}

impl PrivacyCode {
    /// Validates `g` (full row rank, m ≥ r, every r columns independent).
    pub fn from_generator(g: Matrix, r: usize) -> Result<PrivacyCode> {
        let field = g.field().clone();
        let (m, n) = (g.rows(), g.cols());
        if r == 0 || r > n {
            return Err(Error::InvalidParameters(format!("r={r} must lie in 1..={n}")));
        }
        if g.rank() != m {
            return Err(Error::Certificate(format!("generator has rank {} < {m}", g.rank())));
        }
        if m < r {
            return Err(Error::Certificate(format!("key length m={m} is below r={r}")));
        }
        if let Some(bad) = find_dependent_subset(&g, r, 0) {
            return Err(Error::Certificate(format!("columns {bad:?} are dependent")));
        }
        let h = g.null_space();
        Ok(PrivacyCode { field, g, h, r })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.g.cols()
    }
    /// Key length, the dimension of the code.
    pub fn m(&self) -> usize {
        self.g.rows()
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn generator(&self) -> &Matrix {
        &self.g
    }
    pub fn parity_check(&self) -> &Matrix {
        &self.h
    }
}

pub fn build_code(field: &Field, n: usize, r: usize, family: Family) -> Result<PrivacyCode> {
    let g = match family {
        Family::Vandermonde => vandermonde(field, n, r)?,
        Family::DualBch => dual_bch_generator(field, n, r)?,
        Family::Parity => {
            if n < 2 || r != n - 1 {
                return Err(Error::Precondition(format!("parity family needs n >= 2 and r = n-1, got n={n} r={r}")));
            }
            let minus_one = field.neg(Fe::ONE);
            Matrix::from_fn(field, n - 1, n, |i, j| {
                if i == j {
                    Fe::ONE
                } else if j == n - 1 {
                    minus_one
                } else {
                    Fe::ZERO
                }
            })
        }
        Family::Explicit(g) => {
            if g.field() != field || g.cols() != n {
                return Err(Error::DimensionMismatch(format!("explicit generator must be over {field} with {n} columns")));
            }
            g
        }
    };
    PrivacyCode::from_generator(g, r)
}

fn vandermonde(field: &Field, n: usize, r: usize) -> Result<Matrix> {
    if (field.q() as usize) < n {
        return Err(Error::Precondition(format!("Vandermonde code needs q >= n, got q={} n={n}", field.q())));
    }
    let pts = &field.elements()[..n];
    Ok(Matrix::from_fn(field, r, n, |i, j| field.pow(pts[j], i as u64)))
}

fn poly_mul(field: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

/// Generator polynomial (low degree first, 0/1 coefficients) of the
/// narrow-sense binary BCH code of length 2^t - 1 with roots β^1..β^(δ-1).
pub fn bch_generator_poly(t: u32, delta: usize) -> Result<Vec<u8>> {
    let ext = Field::new(2, t, None)?;
    let n = ext.q() as usize - 1;
    let beta = ext.zeta();
    let mut seen = vec![false; n];
    let mut g = vec![Fe::ONE];
    for i in 1..delta {
        let i = i % n;
        if seen[i] {
            continue;
        }
        // cyclotomic coset of i under doubling mod n
        let mut c = i;
        loop {
            seen[c] = true;
            g = poly_mul(&ext, &g, &[ext.neg(ext.pow(beta, c as u64)), Fe::ONE]);
            c = 2 * c % n;
            if c == i {
                break;
            }
        }
    }
    g.iter()
        .map(|c| match c.value() {
            0 => Ok(0),
            1 => Ok(1),
            v => Err(Error::Certificate(format!("BCH generator coefficient {v} outside GF(2)"))),
        })
        .collect()
}

fn dual_bch_generator(field: &Field, n: usize, r: usize) -> Result<Matrix> {
    if field.q() != 2 {
        return Err(Error::Precondition("dual_bch needs GF(2)".into()));
    }
    let t = (n + 1).trailing_zeros();
    if n < 3 || (n + 1).count_ones() != 1 {
        return Err(Error::Precondition(format!("dual_bch needs n = 2^t - 1 with t >= 2, got {n}")));
    }
    if r == 0 || r % 2 == 1 {
        return Err(Error::Precondition(format!("dual_bch needs even r, got {r}")));
    }
    let g = bch_generator_poly(t, r + 1)?;
    let deg = g.len() - 1;
    if deg >= n {
        return Err(Error::Precondition(format!("designed distance {} leaves no BCH code of length {n}", r + 1)));
    }
    // k × n generator of the BCH code; its dual is the privacy code
    let k = n - deg;
    let bch = Matrix::from_fn(field, k, n, |i, j| if j >= i && j - i <= deg { Fe(g[j - i] as u16) } else { Fe::ZERO });
    Ok(bch.null_space())
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Iterates all k-subsets of 0..n in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Some r-subset of columns of `g` that is dependent, if one is found.
/// Exhaustive for at most [`EXHAUSTIVE_CERTIFICATE_LIMIT`] subsets, sampled otherwise.
pub fn find_dependent_subset(g: &Matrix, r: usize, seed: u64) -> Option<Vec<usize>> {
    let n = g.cols();
    let bad = |cols: &Vec<usize>| g.select_column_list(cols).map(|s| s.rank() < r).unwrap_or(true);
    if binom(n, r) <= EXHAUSTIVE_CERTIFICATE_LIMIT {
        let all: Vec<Vec<usize>> = subsets(n, r).collect();
        pool().install(|| all.into_par_iter().find_first(|c| bad(c)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_CERTIFICATE_SUBSETS)
            .map(|_| {
                let mut c = sample(&mut rng, n, r).into_vec();
                c.sort_unstable();
                c
            })
            .find(|c| bad(c))
    }
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::DimensionMismatch(format!("{what} has length {got}, expected {want}")));
    }
    Ok(())
}

/// `x̃ = x + kG`.
pub fn encode(code: &PrivacyCode, x: &[Fe], k: &[Fe]) -> Result<EncodedData> {
    check_len("data vector", x.len(), code.n())?;
    check_len("key", k.len(), code.m())?;
    let kg = code.g.left_mul_vec(k)?;
    let x_tilde = x.iter().zip(&kg).map(|(&a, &b)| code.field.add(a, b)).collect();
    Ok(EncodedData { x_tilde, syndrome: None })
}

/// Uniform key in F_q^m from a seeded ChaCha8 stream.
pub fn sample_key(code: &PrivacyCode, seed: u64) -> Vec<Fe> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_vector(&code.field, code.m(), &mut rng)
}

pub fn random_vector<R: Rng>(field: &Field, len: usize, rng: &mut R) -> Vec<Fe> {
    (0..len).map(|_| Fe(rng.gen_range(0..field.q()) as u16)).collect()
}

/// `x Hᵀ`.
pub fn syndrome(code: &PrivacyCode, x: &[Fe]) -> Result<Vec<Fe>> {
    check_len("data vector", x.len(), code.n())?;
    code.h.mul_vec(x)
}

/// Deterministic x̃ with `x̃ Hᵀ = s`: free variables of the elimination are zero.
pub fn coset_representative(code: &PrivacyCode, s: &[Fe]) -> Result<Vec<Fe>> {
    check_len("syndrome", s.len(), code.h.rows())?;
    code.h.transpose().solve_left(s)
}

/// The unique k with `kG = x - x̃`.
pub fn recover_key(code: &PrivacyCode, x: &[Fe], x_tilde: &[Fe]) -> Result<Vec<Fe>> {
    check_len("data vector", x.len(), code.n())?;
    check_len("privatised vector", x_tilde.len(), code.n())?;
    let diff: Vec<Fe> = x.iter().zip(x_tilde).map(|(&a, &b)| code.field.sub(a, b)).collect();
    let k = code.g.solve_left(&diff).map_err(|_| Error::Decode("x - x_tilde is not a codeword".into()))?;
    if code.g.left_mul_vec(&k)? != diff {
        return Err(Error::Decode("x - x_tilde is not a codeword".into()));
    }
    Ok(k)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetLeakage {
    pub subset: Vec<usize>,
    pub leakage_bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub r: usize,
    /// Number of r-subsets audited.
    pub subsets: usize,
    /// Maximum leakage over all subsets; exactly 0 when every posterior is uniform.
    pub leakage_bits: f64,
    pub worst_subset: Vec<usize>,
    pub pass: bool,
    pub per_subset: Vec<SubsetLeakage>,
}

fn entropy_bits(counts: &[u64], total: u64) -> f64 {
    let t = total as f64;
    counts.iter().filter(|&&c| c > 0).map(|&c| -(c as f64 / t) * (c as f64 / t).log2()).sum()
}

fn vector_at(q: u32, len: usize, mut idx: usize) -> Vec<Fe> {
    (0..len)
        .map(|_| {
            let v = idx % q as usize;
            idx /= q as usize;
            Fe(v as u16)
        })
        .collect()
}

fn index_of_values(q: u32, v: impl Iterator<Item = Fe>) -> usize {
    let mut idx = 0;
    let mut mul = 1;
    for a in v {
        idx += a.value() as usize * mul;
        mul *= q as usize;
    }
    idx
}

/// Leakage `I(X_R; X̃)` for uniform X. Given X̃ = y the posterior of X_R is the
/// histogram of `y_R - (kG)_R` over all keys, which depends on y only through
/// y_R; each y_R is enumerated with every key and the counts are exact.
fn subset_leakage(code: &PrivacyCode, keys: &[Vec<Fe>], r_set: &[usize]) -> (f64, bool) {
    let f = &code.field;
    let q = f.q();
    let r = r_set.len();
    let cells = (q as usize).pow(r as u32);
    let mut uniform = true;
    let mut cond = 0.0;
    let mut hist = vec![0u64; cells];
    for yr in 0..cells {
        let y = vector_at(q, r, yr);
        hist.fill(0);
        for kg in keys {
            let a = index_of_values(q, r_set.iter().zip(&y).map(|(&j, &yj)| f.sub(yj, kg[j])));
            hist[a] += 1;
        }
        uniform &= hist.iter().all(|&c| c == hist[0]);
        cond += entropy_bits(&hist, keys.len() as u64);
    }
    if uniform {
        return (0.0, true);
    }
    let prior = r as f64 * (q as f64).log2();
    ((prior - cond / cells as f64).max(0.0), false)
}

fn codewords(code: &PrivacyCode) -> Result<Vec<Vec<Fe>>> {
    let q = code.field.q();
    let count = (q as usize).pow(code.m() as u32);
    (0..count).map(|i| code.g.left_mul_vec(&vector_at(q, code.m(), i))).collect()
}

/// Exact per-subset leakage audit at privacy level `r`.
pub fn audit_subset_privacy(code: &PrivacyCode, r: usize) -> Result<AuditReport> {
    let (n, m, q) = (code.n(), code.m(), code.field.q() as u128);
    if r == 0 || r > n {
        return Err(Error::InvalidParameters(format!("r={r} must lie in 1..={n}")));
    }
    let work = binom(n, r).saturating_mul(q.saturating_pow((r + m) as u32));
    if work > AUDIT_LIMIT {
        return Err(Error::TooLarge(format!("C({n},{r})·q^(r+m) = {work} exceeds {AUDIT_LIMIT}")));
    }
    let keys = codewords(code)?;
    let all: Vec<Vec<usize>> = subsets(n, r).collect();
    let per: Vec<(Vec<usize>, f64, bool)> = pool().install(|| {
        all.into_par_iter()
            .map(|s| {
                let (bits, ok) = subset_leakage(code, &keys, &s);
                (s, bits, ok)
            })
            .collect()
    });
    Ok(report(r, per))
}

fn report(r: usize, per: Vec<(Vec<usize>, f64, bool)>) -> AuditReport {
    let pass = per.iter().all(|p| p.2);
    let (worst, bits) = per
        .iter()
        .fold((Vec::new(), 0.0f64), |(w, b), p| if p.1 > b || w.is_empty() { (p.0.clone(), p.1) } else { (w, b) });
    AuditReport {
        r,
        subsets: per.len(),
        leakage_bits: if pass { 0.0 } else { bits },
        worst_subset: worst,
        pass,
        per_subset: per.into_iter().map(|(subset, leakage_bits, _)| SubsetLeakage { subset, leakage_bits }).collect(),
    }
}

fn brute_force_guard(code: &PrivacyCode) -> Result<()> {
    let q = code.field.q() as u128;
    let size = q.saturating_pow((code.n() + code.m()) as u32);
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!("q^(n+m) = {size} exceeds {BRUTE_FORCE_LIMIT}")));
    }
    Ok(())
}

/// Reference auditor enumerating every (x, k) pair and tabulating the joint
/// distribution of (X_R, X̃) directly.
pub fn audit_subset_privacy_bruteforce(code: &PrivacyCode, r: usize) -> Result<AuditReport> {
    brute_force_guard(code)?;
    let f = &code.field;
    let (n, q) = (code.n(), f.q());
    let keys = codewords(code)?;
    let nx = (q as usize).pow(n as u32);
    let cells = (q as usize).pow(r as u32);
    let per = subsets(n, r)
        .map(|s| {
            let mut joint: HashMap<Vec<Fe>, Vec<u64>> = HashMap::new();
            let mut marginal = vec![0u64; cells];
            for xi in 0..nx {
                let x = vector_at(q, n, xi);
                let a = index_of_values(q, s.iter().map(|&j| x[j]));
                for kg in &keys {
                    let y: Vec<Fe> = x.iter().zip(kg).map(|(&u, &v)| f.add(u, v)).collect();
                    joint.entry(y).or_insert_with(|| vec![0; cells])[a] += 1;
                    marginal[a] += 1;
                }
            }
            let total = (nx * keys.len()) as u64;
            let uniform = joint.values().all(|h| {
                let t: u64 = h.iter().sum();
                h.iter().all(|&c| c * cells as u64 == t)
            });
            let cond: f64 = joint
                .values()
                .map(|h| {
                    let t: u64 = h.iter().sum();
                    t as f64 / total as f64 * entropy_bits(h, t)
                })
                .sum();
            let bits = if uniform { 0.0 } else { (entropy_bits(&marginal, total) - cond).max(0.0) };
            (s, bits, uniform)
        })
        .collect();
    Ok(report(r, per))
}

/// `I(X; X̃)` in bits for uniform X, by enumerating every (x, k).
pub fn global_leakage_bits(code: &PrivacyCode) -> Result<f64> {
    brute_force_guard(code)?;
    let f = &code.field;
    let (n, q) = (code.n(), f.q());
    let keys = codewords(code)?;
    let nx = (q as usize).pow(n as u32);
    let mut ys: HashMap<Vec<Fe>, u64> = HashMap::new();
    let mut cond = 0.0;
    for xi in 0..nx {
        let x = vector_at(q, n, xi);
        let mut given: HashMap<Vec<Fe>, u64> = HashMap::new();
        for kg in &keys {
            let y: Vec<Fe> = x.iter().zip(kg).map(|(&u, &v)| f.add(u, v)).collect();
            *given.entry(y.clone()).or_default() += 1;
            *ys.entry(y).or_default() += 1;
        }
        let counts: Vec<u64> = given.into_values().collect();
        cond += entropy_bits(&counts, keys.len() as u64);
    }
    let counts: Vec<u64> = ys.into_values().collect();
    let total = (nx * keys.len()) as u64;
    Ok(entropy_bits(&counts, total) - cond / nx as f64)
}
