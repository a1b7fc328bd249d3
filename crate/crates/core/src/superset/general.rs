// SPDX-License-Identifier: Apache-2.0

//! Constructions over general GF(q).
//!
//! d = 1 constructions add a few points to the information set
//! {0, e_1, …, e_m}. In systematic form the extra point z contributes the
//! column (1 - Σ z_j, z_1, …, z_m); the union is a 2-super-set when every row
//! of those columns has weight at least two and no row is a multiple of
//! another. Larger degrees are handled by splitting F_q^m into the hyperplanes
//! x_m = α_i and recursing.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::multiset::IndexMultiset;

use super::binary::{self, thm5_supports};
use super::{
    check_params, code_len, lemma4_size, lemma4_superset, union_all, Method, Mode, Plan, SupersetResult,
};

fn point_index(field: &Field, coords: &[Fe]) -> usize {
    let q = field.q() as usize;
    coords.iter().rev().fold(0, |acc, &z| acc * q + field.index_of(z))
}

fn d1_points(field: &Field, m: u32, extra: &[Vec<Fe>]) -> Result<IndexMultiset> {
    let base = code_len(field.q(), m)?;
    let q = field.q() as usize;
    let info = std::iter::once(0).chain((0..m).map(|j| q.pow(j)));
    IndexMultiset::from_indices(base, info.chain(extra.iter().map(|z| point_index(field, z))))
}

/// Systematic rows for the extra points: row 0 is `1 - Σ z_j`, row j is `z_j`.
fn systematic_rows(field: &Field, m: usize, extra: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let mut rows = vec![Vec::with_capacity(extra.len()); m + 1];
    for z in extra {
        let sum = z.iter().fold(Fe::ZERO, |acc, &v| field.add(acc, v));
        rows[0].push(field.sub(Fe::ONE, sum));
        for j in 0..m {
            rows[j + 1].push(z[j]);
        }
    }
    rows
}

fn proportional(field: &Field, a: &[Fe], b: &[Fe]) -> bool {
    // a and b are nonzero here; compare b against c·a with c fixed by the first nonzero of a
    let Some(k) = a.iter().position(|v| !v.is_zero()) else {
        return b.iter().all(|v| v.is_zero());
    };
    let c = field.div(b[k], a[k]).expect("nonzero pivot");
    a.iter().zip(b).all(|(&x, &y)| field.mul(c, x) == y)
}

/// Row test certifying that {0, e_1..e_m} plus `extra` is a 2-super-set for RM_q(1, m).
pub fn d1_rows_ok(field: &Field, m: usize, extra: &[Vec<Fe>]) -> bool {
    let rows = systematic_rows(field, m, extra);
    if rows.iter().any(|r| r.iter().filter(|v| !v.is_zero()).count() < 2) {
        return false;
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if proportional(field, &rows[i], &rows[j]) {
                return false;
            }
        }
    }
    true
}

fn require_odd_field(field: &Field, what: &str) -> Result<()> {
    if field.q() == 2 {
        return Err(Error::Precondition(format!("{what} needs q > 2")));
    }
    Ok(())
}

/// 1-super-set for RM_q(1, m), q > 2, of size m+2: the information set plus
/// the all-ones point, or `(α, 1, …, 1)` with α = α_2 when p divides m-1.
pub fn thm8_superset(field: &Field, m: u32) -> Result<SupersetResult> {
    require_odd_field(field, "thm8")?;
    if m < 2 {
        return Err(Error::Precondition(format!("thm8 needs m >= 2, got {m}")));
    }
    let mut z = vec![Fe::ONE; m as usize];
    if (m - 1).is_multiple_of(field.p()) {
        z[0] = field.alpha(2);
    }
    let t = d1_points(field, m, &[z])?;
    Ok(SupersetResult::new(field, 1, m, 1, Method::Thm8, "thm8".into(), Plan::Explicit(t)))
}

/// 2-super-set for RM_q(1, m) of size 2m+1: the binary pattern of supports
/// {1,2}, {m-1,m}, {i,i+2} read as 0/1 points.
pub fn thm9_superset(field: &Field, m: u32) -> Result<SupersetResult> {
    if m < 3 {
        return Err(Error::Precondition(format!("thm9 needs m >= 3, got {m}")));
    }
    let extra: Vec<Vec<Fe>> = thm5_supports(m)
        .into_iter()
        .map(|b| {
            let mut z = vec![Fe::ZERO; m as usize];
            for j in b {
                z[j - 1] = Fe::ONE;
            }
            z
        })
        .collect();
    let t = d1_points(field, m, &extra)?;
    Ok(SupersetResult::new(field, 1, m, 2, Method::Thm9, "thm9".into(), Plan::Explicit(t)))
}

/// 2-super-set for RM_q(1, q-2) of size q+1, for characteristic other than 2
/// and 3: the information set, the all-ones point and the point listing the
/// nonzero elements other than 1/2 in canonical order.
pub fn thm10_superset(field: &Field) -> Result<SupersetResult> {
    let p = field.p();
    if p == 2 || p == 3 {
        return Err(Error::Precondition(format!("thm10 needs characteristic other than 2 and 3, got {p}")));
    }
    let m = field.q() - 2;
    let half = field.inv(field.from_int(2))?;
    let xs: Vec<Fe> = field.elements()[1..].iter().copied().filter(|&a| a != half).collect();
    let t = d1_points(field, m, &[vec![Fe::ONE; m as usize], xs])?;
    Ok(SupersetResult::new(field, 1, m, 2, Method::Thm10, "thm10".into(), Plan::Explicit(t)))
}

/// Extra points for the block construction with k = m/γ blocks: point c
/// (0 ≤ c ≤ k) carries `xs` on block c-1 and ones on block c.
fn thm11_points(m: usize, gamma: usize, xs: &[Fe]) -> Vec<Vec<Fe>> {
    let k = m / gamma;
    (0..=k)
        .map(|c| {
            let mut z = vec![Fe::ZERO; m];
            if c >= 1 {
                z[(c - 1) * gamma..c * gamma].copy_from_slice(xs);
            }
            if c < k {
                z[c * gamma..(c + 1) * gamma].fill(Fe::ONE);
            }
            z
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
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

/// The distinct nonzero `x_1..x_γ` used by the block construction for
/// (m, γ), if any choice passes the row test. Choices are tried in
/// lexicographic order of canonical positions, starting with α_1..α_γ.
pub fn thm11_admissible(field: &Field, m: u32, gamma: u32) -> Option<Vec<Fe>> {
    let (m, gamma) = (m as usize, gamma as usize);
    let q = field.q() as usize;
    if field.q() == 2 || gamma == 0 || m % gamma != 0 || gamma > q - 1 {
        return None;
    }
    let nonzero = &field.elements()[1..];
    combinations(q - 1, gamma)
        .map(|idx| idx.iter().map(|&i| nonzero[i]).collect::<Vec<Fe>>())
        .find(|xs| d1_rows_ok(field, m, &thm11_points(m, gamma, xs)))
}

/// 2-super-set for RM_q(1, m) of size m + m/γ + 2 (γ divides m, q > 2).
pub fn thm11_superset(field: &Field, m: u32, gamma: u32) -> Result<SupersetResult> {
    require_odd_field(field, "thm11")?;
    let xs = thm11_admissible(field, m, gamma).ok_or_else(|| {
        Error::Precondition(format!("no admissible block construction for q={}, m={m}, gamma={gamma}", field.q()))
    })?;
    let t = d1_points(field, m, &thm11_points(m as usize, gamma as usize, &xs))?;
    Ok(SupersetResult::new(field, 1, m, 2, Method::Thm11, format!("thm11(gamma={gamma})"), Plan::Explicit(t)))
}

/// Smallest verified 2-super-set for RM_q(1, m), q > 2, among the
/// constructions above.
pub fn best_2superset_general(field: &Field, m: u32) -> Result<SupersetResult> {
    require_odd_field(field, "best_2superset_general")?;
    let mut candidates = Vec::new();
    if m >= 3 {
        candidates.push(thm9_superset(field, m)?);
    }
    if m + 2 == field.q() && field.p() > 3 {
        candidates.push(thm10_superset(field)?);
    }
    candidates.extend((1..=m).filter_map(|g| thm11_superset(field, m, g).ok()));
    candidates.sort_by_key(SupersetResult::size);
    for mut c in candidates {
        if c.verify()? {
            return Ok(c);
        }
    }
    Err(Error::Precondition(format!("no 2-super-set construction for q={}, m={m}", field.q())))
}

/// Places part i (a super-set for RM_q(d-i, m-1)) in the hyperplane block
/// x_m = α_i, for i = 0..=min(d, q-1).
pub fn lemma9_compose(parts: &[SupersetResult]) -> Result<SupersetResult> {
    let blocks: Vec<usize> = (0..parts.len()).collect();
    lemma9_compose_with_blocks(parts, &blocks)
}

/// Same as [`lemma9_compose`] with an explicit (distinct) block per part.
pub fn lemma9_compose_with_blocks(parts: &[SupersetResult], blocks: &[usize]) -> Result<SupersetResult> {
    let first = parts.first().ok_or_else(|| Error::InvalidParameters("lemma9 needs at least one part".into()))?;
    let field = first.field().clone();
    let q = field.q();
    let (d, m, s) = (first.d(), first.m() + 1, first.s());
    let w = d.min(q - 1) as usize;
    if parts.len() != w + 1 || blocks.len() != parts.len() {
        return Err(Error::InvalidParameters(format!(
            "lemma9 needs {} parts for RM_{q}({d},{m}), got {}",
            w + 1,
            parts.len()
        )));
    }
    for (i, p) in parts.iter().enumerate() {
        if p.field() != &field || p.m() + 1 != m || p.s() != s || p.d() as usize + i != d as usize {
            return Err(Error::InvalidParameters(format!(
                "part {i} must be an S={s} super-set for RM_{q}({},{})",
                d as usize - i,
                m - 1
            )));
        }
    }
    let mut sorted = blocks.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != blocks.len() || sorted.last().is_some_and(|&b| b >= q as usize) {
        return Err(Error::InvalidParameters("lemma9 blocks must be distinct and below q".into()));
    }
    check_params(q, d, m, s)?;
    let base = code_len(q, m)?;
    let block = base / q as usize;
    let plan = Plan::Blocks {
        base,
        block,
        parts: parts.iter().zip(blocks).map(|(p, &b)| (b, p.plan().clone())).collect(),
    };
    let prov = format!("lemma9({})", parts.iter().map(|p| p.provenance()).collect::<Vec<_>>().join(","));
    Ok(SupersetResult::new(&field, d, m, s, Method::Lemma9, prov, plan))
}

/// Whether splitting RM_q(d, m) over hyperplanes into prefix leaves beats
/// the prefix super-set of RM_q(d, m) itself. False if some part
/// RM_q(d-i, m-1) is undefined or cannot tolerate S.
pub fn condition9(q: u32, d: u32, m: u32, s: usize) -> bool {
    if d < 2 || m < 2 {
        return false;
    }
    let Ok(rhs) = lemma4_size(q, d, m, s) else {
        return false;
    };
    let w = d.min(q - 1);
    let mut lhs = 0u64;
    for i in 0..=w {
        match lemma4_size(q, d - i, m - 1, s) {
            Ok(v) => lhs += v,
            Err(_) => return false,
        }
    }
    lhs <= rhs
}

struct GeneralBuilder {
    field: Field,
    best2: HashMap<u32, Option<SupersetResult>>,
}

impl GeneralBuilder {
    fn two_superset(&mut self, m: u32) -> Result<Option<SupersetResult>> {
        if let Some(r) = self.best2.get(&m) {
            return Ok(r.clone());
        }
        let r = match best_2superset_general(&self.field, m) {
            Ok(r) => Some(r),
            Err(Error::Precondition(_)) => None,
            Err(e) => return Err(e),
        };
        self.best2.insert(m, r.clone());
        Ok(r)
    }

    fn degree_one(&mut self, m: u32, s: usize) -> Result<SupersetResult> {
        let prefix = lemma4_superset(&self.field, 1, m, s)?;
        let two = if s >= 2 { self.two_superset(m)? } else { None };
        let one = if s % 2 == 1 && m >= 2 { Some(thm8_superset(&self.field, m)?) } else { None };
        if (s >= 2 && two.is_none()) || (s % 2 == 1 && one.is_none()) {
            return Ok(prefix);
        }
        let mut items: Vec<&SupersetResult> = Vec::new();
        for _ in 0..s / 2 {
            items.push(two.as_ref().expect("checked above"));
        }
        if let Some(o) = one.as_ref() {
            items.push(o);
        }
        let union = union_all(&items)?;
        Ok(if union.size() <= prefix.size() { union } else { prefix })
    }

    fn build(&mut self, d: u32, m: u32, s: usize) -> Result<SupersetResult> {
        let q = self.field.q();
        if d == 0 {
            return lemma4_superset(&self.field, 0, m, s);
        }
        if d == 1 {
            return self.degree_one(m, s);
        }
        if !condition9(q, d, m, s) {
            return lemma4_superset(&self.field, d, m, s);
        }
        let w = d.min(q - 1);
        let parts = (0..=w).map(|i| self.build(d - i, m - 1, s)).collect::<Result<Vec<_>>>()?;
        let r = lemma9_compose(&parts)?;
        let prov = r.provenance().to_string();
        Ok(r.with_method(Method::RecursiveGeneral, prov))
    }
}

/// Recursive super-set for RM_q(d, m). Splits over the hyperplanes while
/// [`condition9`] holds; leaves are S+1 points (d = 0), the best d = 1
/// construction or union, or the prefix set. For q = 2 this is
/// [`binary::recursive_binary`].
pub fn recursive_general(field: &Field, d: u32, m: u32, s: usize, mode: Mode) -> Result<SupersetResult> {
    check_params(field.q(), d, m, s)?;
    if field.q() == 2 {
        return binary::recursive_binary_any(d, m, s, mode);
    }
    GeneralBuilder { field: field.clone(), best2: HashMap::new() }.build(d, m, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn thm8_examples() {
        let f3 = gf(3);
        let mut r = thm8_superset(&f3, 4).unwrap();
        assert_eq!(r.size(), 6);
        // the modified point (α_2, 1, 1, 1)
        let pt = point_index(&f3, &[f3.alpha(2), Fe::ONE, Fe::ONE, Fe::ONE]);
        assert!(r.multiset().contains(pt));
        assert!(r.verify().unwrap());

        let f5 = gf(5);
        let mut r = thm8_superset(&f5, 4).unwrap();
        assert!(r.multiset().contains(point_index(&f5, &[Fe::ONE; 4])));
        assert!(r.verify().unwrap());
        assert!(thm8_superset(&gf(2), 4).is_err());
    }

    #[test]
    fn thm8_sizes_across_fields() {
        for q in [3u32, 4, 5, 7] {
            for m in 2..=4 {
                let mut r = thm8_superset(&gf(q), m).unwrap();
                assert_eq!(r.size() as u32, m + 2);
                assert!(r.verify().unwrap(), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn thm9_examples() {
        for (q, m) in [(3, 4), (4, 5), (5, 3), (3, 3)] {
            let mut r = thm9_superset(&gf(q), m).unwrap();
            assert_eq!(r.size() as u32, 2 * m + 1);
            assert!(r.verify().unwrap(), "q={q} m={m}");
        }
        let b = thm9_superset(&gf(2), 5).unwrap().multiset();
        assert_eq!(b, binary::thm5_superset(5).unwrap().multiset());
    }

    #[test]
    fn thm10_examples() {
        for q in [5u32, 7] {
            let mut r = thm10_superset(&gf(q)).unwrap();
            assert_eq!(r.m(), q - 2);
            assert_eq!(r.size() as u32, q + 1);
            assert!(r.verify().unwrap());
        }
        assert!(thm10_superset(&gf(4)).is_err());
        assert!(thm10_superset(&gf(9)).is_err());
    }

    #[test]
    fn thm11_examples() {
        let mut r = thm11_superset(&gf(5), 6, 3).unwrap();
        assert_eq!(r.size(), 10);
        assert!(r.verify().unwrap());
        let mut r = thm11_superset(&gf(4), 4, 2).unwrap();
        assert_eq!(r.size(), 8);
        assert!(r.verify().unwrap());
        assert!(thm11_superset(&gf(5), 6, 4).is_err());
    }

    #[test]
    fn thm11_row_test_agrees_with_verifier() {
        for q in [3u32, 4, 5] {
            let f = gf(q);
            for m in 2..=5u32 {
                for g in 1..=m {
                    let Ok(mut r) = thm11_superset(&f, m, g) else { continue };
                    assert!(r.verify().unwrap(), "q={q} m={m} gamma={g}");
                    assert_eq!(r.size() as u32, m + m / g + 2);
                }
            }
        }
    }

    #[test]
    fn block_admissibility() {
        let f = gf(3);
        assert!(thm11_admissible(&f, 4, 2).is_some());
        assert!(thm11_admissible(&f, 3, 1).is_some());
        assert!(thm11_admissible(&f, 2, 1).is_none());
        assert!(thm11_admissible(&gf(5), 2, 1).is_some());
    }

    #[test]
    fn condition9_examples() {
        assert!(condition9(3, 2, 5, 1));
        assert!(!condition9(3, 2, 2, 2));
        for m in 3..=9u32 {
            for d in 2..m {
                for s in 1..4usize {
                    if (s as u64) < 1 << (m - d) {
                        assert_eq!(condition9(2, d, m, s), s < 1 << (m - d - 1), "d={d} m={m} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn lemma9_examples() {
        let f = gf(3);
        let parts: Vec<SupersetResult> = vec![
            lemma4_superset(&f, 2, 2, 1).unwrap(),
            recursive_general(&f, 1, 2, 1, Mode::Closed).unwrap(),
            lemma4_superset(&f, 0, 2, 1).unwrap(),
        ];
        assert_eq!(parts.iter().map(SupersetResult::size).collect::<Vec<_>>(), vec![8, 4, 2]);
        let mut r = lemma9_compose(&parts).unwrap();
        assert_eq!(r.size(), 14);
        assert!(r.verify().unwrap());

        // wrong number of parts, and mismatched degrees
        assert!(lemma9_compose(&parts[..2]).is_err());
        let swapped = vec![parts[1].clone(), parts[0].clone(), parts[2].clone()];
        assert!(lemma9_compose(&swapped).is_err());
    }

    #[test]
    fn lemma9_any_block_assignment() {
        let f = gf(3);
        let parts: Vec<SupersetResult> = vec![
            lemma4_superset(&f, 2, 2, 1).unwrap(),
            recursive_general(&f, 1, 2, 1, Mode::Closed).unwrap(),
            lemma4_superset(&f, 0, 2, 1).unwrap(),
        ];
        for blocks in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let mut r = lemma9_compose_with_blocks(&parts, &blocks).unwrap();
            assert_eq!(r.size(), 14);
            assert!(r.verify().unwrap(), "blocks {blocks:?}");
        }
        assert!(lemma9_compose_with_blocks(&parts, &[0, 0, 1]).is_err());
    }

    #[test]
    fn recursive_general_examples() {
        let f = gf(3);
        assert_eq!(recursive_general(&f, 2, 5, 1, Mode::Closed).unwrap().size(), 29);
        assert_eq!(recursive_general(&f, 1, 5, 3, Mode::Closed).unwrap().size(), 18);
        assert_eq!(recursive_general(&f, 2, 5, 2, Mode::Closed).unwrap().size(), 39);
    }

    #[test]
    fn binary_field_delegates() {
        let f = gf(2);
        assert_eq!(recursive_general(&f, 3, 6, 1, Mode::Closed).unwrap().size(), 50);
    }
}
