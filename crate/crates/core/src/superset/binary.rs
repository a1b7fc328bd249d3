// SPDX-License-Identifier: Apache-2.0

//! Binary constructions, RM_2(d, m).
//!
//! A binary point is written by its support: the index set B ⊆ [m] of
//! coordinates equal to one, so its column index is `Σ_(j∈B) 2^(j-1)`. For
//! d = 1 every construction here is the information set {0, e_1, …, e_m}
//! plus a few extra points.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::multiset::IndexMultiset;

use super::{
    check_params, code_len, general, lemma4_superset, union_all, Method, Mode, Plan, SupersetResult,
};

fn gf2() -> Field {
    Field::prime(2).expect("GF(2)")
}

/// Column index of the binary point with the given support (1-based coordinates).
pub fn support_point(support: &[usize]) -> usize {
    support.iter().fold(0, |acc, &j| acc | (1 << (j - 1)))
}

fn d1_points(m: u32, extra: &[Vec<usize>]) -> Result<IndexMultiset> {
    let base = code_len(2, m)?;
    let info = std::iter::once(0).chain((1..=m as usize).map(|j| 1 << (j - 1)));
    IndexMultiset::from_indices(base, info.chain(extra.iter().map(|b| support_point(b))))
}

/// 1-super-set for RM_2(1, m): the information set plus the all-ones point,
/// and for odd m also the point with support {1, 2}. Size m+2 or m+3.
pub fn thm4_superset(m: u32) -> Result<SupersetResult> {
    if m < 2 {
        return Err(Error::Precondition(format!("thm4 needs m >= 2, got {m}")));
    }
    let mut extra = vec![(1..=m as usize).collect::<Vec<_>>()];
    if m % 2 == 1 {
        extra.push(vec![1, 2]);
    }
    let t = d1_points(m, &extra)?;
    Ok(SupersetResult::new(&gf2(), 1, m, 1, Method::Thm4, "thm4".into(), Plan::Explicit(t)))
}

/// Extra supports of the size-(2m+1) 2-super-set: {1,2}, {m-1,m} and {i,i+2}.
pub(crate) fn thm5_supports(m: u32) -> Vec<Vec<usize>> {
    let m = m as usize;
    let mut sets = vec![vec![1, 2], vec![m - 1, m]];
    sets.extend((1..=m - 2).map(|i| vec![i, i + 2]));
    sets
}

/// 2-super-set for RM_2(1, m) of size 2m+1 (m ≥ 3).
pub fn thm5_superset(m: u32) -> Result<SupersetResult> {
    if m < 3 {
        return Err(Error::Precondition(format!("thm5 needs m >= 3, got {m}")));
    }
    let t = d1_points(m, &thm5_supports(m))?;
    Ok(SupersetResult::new(&gf2(), 1, m, 2, Method::Thm5, "thm5".into(), Plan::Explicit(t)))
}

/// Row membership lists T_j = {c : j ∈ S_c} for j ∈ [m] (index 0 unused).
fn memberships(m: usize, sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut t = vec![Vec::new(); m + 1];
    for (c, set) in sets.iter().enumerate() {
        for &j in set {
            t[j].push(c + 1);
        }
    }
    t
}

fn rows_unsettled(t: &[Vec<usize>]) -> bool {
    let rows = &t[1..];
    if rows.iter().any(|r| r.len() < 2) {
        return true;
    }
    let mut sorted: Vec<&Vec<usize>> = rows.iter().collect();
    sorted.sort();
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// Parity row of the systematic form: columns whose support has even size.
fn parity_row(sets: &[Vec<usize>]) -> Vec<usize> {
    (0..sets.len()).filter(|&c| sets[c].len().is_multiple_of(2)).map(|c| c + 1).collect()
}

/// Whether {0, e_1..e_m} plus the given supports is a 2-super-set for
/// RM_2(1, m): every row of the systematic form has weight at least two and
/// no two rows coincide. Works for any m (no generator matrix needed).
pub fn binary_d1_rows_ok(m: usize, sets: &[Vec<usize>]) -> bool {
    let mut t = memberships(m, sets);
    t[0] = parity_row(sets);
    if t.iter().any(|r| r.len() < 2) {
        return false;
    }
    let mut sorted: Vec<&Vec<usize>> = t.iter().collect();
    sorted.sort();
    !sorted.windows(2).any(|w| w[0] == w[1])
}

/// The greedy search for 2-super-sets of RM_2(1, m) with weight limit `eta`.
///
/// Returns the extra supports S_1, …, S_u. Each round first breaks ties
/// between equal rows T_i = T_j (only rows that already have two entries;
/// the smaller index of each tied group joins), then adds the smallest index
/// covered once, then uncovered indices, then further once-covered indices
/// that do not make three rows equal, all up to weight `eta`.
pub fn greedy_sets(m: usize, eta: usize) -> Result<Vec<Vec<usize>>> {
    if m < 4 || eta < 2 || eta > m {
        return Err(Error::Precondition(format!("greedy needs m >= 4 and 2 <= eta <= m, got m={m}, eta={eta}")));
    }
    let mut sets: Vec<Vec<usize>> = vec![(1..=eta).collect()];
    let mut t = memberships(m, &sets);
    let max_rounds = 4 * m + 8;
    while rows_unsettled(&t) {
        if sets.len() >= max_rounds {
            return Err(Error::Abort(format!("no progress after {max_rounds} rounds (m={m}, eta={eta})")));
        }
        let u = sets.len() + 1;
        let mut chosen = vec![false; m + 1];
        let mut weight = 0;
        let mut cur = t.clone();
        let take = |j: usize, cur: &mut Vec<Vec<usize>>, chosen: &mut Vec<bool>, weight: &mut usize| {
            chosen[j] = true;
            cur[j].push(u);
            *weight += 1;
        };

        let mut groups: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
        for j in 1..=m {
            if t[j].len() >= 2 {
                groups.entry(&t[j]).or_default().push(j);
            }
        }
        let resolve: Vec<usize> = groups.values().filter(|g| g.len() >= 2).map(|g| g[0]).collect();
        for j in resolve {
            take(j, &mut cur, &mut chosen, &mut weight);
        }

        if let Some(i) = (1..=m).find(|&i| cur[i].len() == 1) {
            take(i, &mut cur, &mut chosen, &mut weight);
        }

        let zeros: Vec<usize> = (1..=m).filter(|&i| cur[i].is_empty()).collect();
        let room = eta.saturating_sub(weight);
        for &i in zeros.iter().take(room) {
            take(i, &mut cur, &mut chosen, &mut weight);
        }

        let ones: Vec<usize> = (1..=m).filter(|&i| cur[i].len() == 1 && !chosen[i]).collect();
        for i in ones {
            if weight >= eta {
                break;
            }
            let mut grown = cur[i].clone();
            grown.push(u);
            let equal = (1..=m).filter(|&k| k != i && cur[k] == grown).count();
            if equal >= 2 {
                continue;
            }
            take(i, &mut cur, &mut chosen, &mut weight);
        }

        sets.push((1..=m).filter(|&j| chosen[j]).collect());
        t = cur;
    }
    let t0 = parity_row(&sets);
    if t0.len() < 2 || t[1..].contains(&t0) {
        return Err(Error::Abort(format!("parity row fails (m={m}, eta={eta})")));
    }
    Ok(sets)
}

/// Greedy 2-super-set: {0, e_1..e_m} plus the greedy supports.
pub fn greedy_2superset(m: u32, eta: u32) -> Result<SupersetResult> {
    let sets = greedy_sets(m as usize, eta as usize)?;
    let t = d1_points(m, &sets)?;
    Ok(SupersetResult::new(&gf2(), 1, m, 2, Method::Greedy, format!("greedy(eta={eta})"), Plan::Explicit(t)))
}

/// Smallest verified 2-super-set for RM_2(1, m) among the size-(2m+1)
/// construction and the greedy search over every weight limit.
pub fn best_2superset_binary(m: u32) -> Result<SupersetResult> {
    let mut candidates = vec![thm5_superset(m)?];
    if m >= 4 {
        candidates.extend((2..=m).filter_map(|eta| greedy_2superset(m, eta).ok()));
    }
    candidates.sort_by_key(SupersetResult::size);
    for mut c in candidates {
        if c.verify()? {
            return Ok(c);
        }
    }
    Err(Error::Certificate(format!("no 2-super-set candidate verified for m={m}")))
}

fn binom(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn pow2(e: i64) -> u64 {
    if e < 0 {
        0
    } else {
        1u64.checked_shl(e as u32).unwrap_or(u64::MAX)
    }
}

/// Size bound for binary d = 1 super-sets:
/// min(2^(i-1) + S + 1, ⌊S/2⌋(2i+1) + (S mod 2)(i+3)).
pub fn u_bound(i: u32, s: usize) -> u64 {
    let s = s as u64;
    let lemma4 = pow2(i as i64 - 1).saturating_add(s + 1);
    let unions = (s / 2) * (2 * i as u64 + 1) + (s % 2) * (i as u64 + 3);
    lemma4.min(unions)
}

/// Closed-form upper bound on the recursive construction for RM_2(d, m).
///
/// With s = log2(S+1) (rounded up to `c`): the d - 1 leaves of degree i ≥ 2
/// contribute `C(m-i-c-1, d-i)·2^(i+c)` (or `2^(i+c) - 2^c + S + 1` when s is
/// not an integer) and the degree-1 leaves on j variables contribute
/// `C(m-j-1, d-2)·U(1, j, S)` for j from 2+c to m-d+1.
pub fn thm7_bound(d: u32, m: u32, s: usize) -> u64 {
    if d == 1 {
        return u_bound(m, s);
    }
    let (d, m) = (d as i64, m as i64);
    if pow2(m - d - 1) < s as u64 + 1 {
        // the root is already a prefix leaf
        return pow2(m) - pow2(m - d) + s as u64 + 1;
    }
    let c = (usize::BITS - s.leading_zeros()) as i64; // ⌈log2(S+1)⌉
    let exact = s + 1 == 1 << c;
    let mut total = 0u64;
    for i in 2..=d {
        let leaf = if exact { pow2(i + c) } else { pow2(i + c) - pow2(c) + s as u64 + 1 };
        total += binom(m - i - c - 1, d - i) * leaf;
    }
    for j in 2 + c..=m - d + 1 {
        total += binom(m - j - 1, d - 2) * u_bound(j as u32, s);
    }
    total
}

/// Composition over the two halves x_m = 0 and x_m = 1: an S-super-set for
/// RM_2(d, m-1) in the first half and one for RM_2(d-1, m-1) shifted by 2^(m-1).
pub fn lemma7_compose(t1: &SupersetResult, t2: &SupersetResult) -> Result<SupersetResult> {
    if t1.q() != 2 || t2.q() != 2 || t1.m() != t2.m() || t1.d() != t2.d() + 1 || t1.s() != t2.s() {
        return Err(Error::InvalidParameters(
            "lemma7 needs binary parts for RM(d, m-1) and RM(d-1, m-1) with a common S".into(),
        ));
    }
    let r = general::lemma9_compose(&[t1.clone(), t2.clone()])?;
    let prov = format!("lemma7({},{})", t1.provenance(), t2.provenance());
    Ok(r.with_method(Method::Lemma7, prov))
}

struct BinaryBuilder {
    mode: Mode,
    best2: HashMap<u32, SupersetResult>,
}

impl BinaryBuilder {
    fn two_superset(&mut self, m: u32) -> Result<Option<SupersetResult>> {
        if m < 3 {
            return Ok(None);
        }
        if let Some(r) = self.best2.get(&m) {
            return Ok(Some(r.clone()));
        }
        let r = match self.mode {
            Mode::Closed => thm5_superset(m)?,
            Mode::Best => best_2superset_binary(m)?,
        };
        self.best2.insert(m, r.clone());
        Ok(Some(r))
    }

    fn degree_one(&mut self, m: u32, s: usize) -> Result<SupersetResult> {
        let field = gf2();
        let prefix = lemma4_superset(&field, 1, m, s)?;
        let two = if s >= 2 { self.two_superset(m)? } else { None };
        if s >= 2 && two.is_none() {
            return Ok(prefix);
        }
        let one = if s % 2 == 1 { Some(thm4_superset(m)?) } else { None };
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
        let field = gf2();
        if d == 0 {
            return lemma4_superset(&field, 0, m, s);
        }
        if d == 1 {
            return self.degree_one(m, s);
        }
        if (s as u64) + 1 > pow2(m as i64 - d as i64 - 1) {
            return lemma4_superset(&field, d, m, s);
        }
        let t1 = self.build(d, m - 1, s)?;
        let t2 = self.build(d - 1, m - 1, s)?;
        let r = lemma7_compose(&t1, &t2)?;
        let prov = r.provenance().to_string();
        Ok(r.with_method(Method::RecursiveBinary, prov))
    }
}

/// Recursive super-set for RM_2(d, m): split into RM_2(d, m-1) and
/// RM_2(d-1, m-1) until S+1 > 2^(m-d-1) (prefix leaf) or d = 1 (smaller of
/// the prefix and a union of 2- and 1-super-sets).
pub fn recursive_binary(d: u32, m: u32, s: usize, mode: Mode) -> Result<SupersetResult> {
    if d == 0 || d >= m {
        return Err(Error::InvalidParameters(format!("recursive_binary needs 1 <= d < m, got d={d}, m={m}")));
    }
    check_params(2, d, m, s)?;
    BinaryBuilder { mode, best2: HashMap::new() }.build(d, m, s)
}

pub(crate) fn recursive_binary_any(d: u32, m: u32, s: usize, mode: Mode) -> Result<SupersetResult> {
    check_params(2, d, m, s)?;
    BinaryBuilder { mode, best2: HashMap::new() }.build(d, m, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm4_sizes_and_validity() {
        for m in 2..=7 {
            let mut r = thm4_superset(m).unwrap();
            assert_eq!(r.size() as u32, if m % 2 == 0 { m + 2 } else { m + 3 });
            assert!(r.verify().unwrap(), "m={m}");
        }
    }

    #[test]
    fn thm5_sizes_and_validity() {
        for m in 3..=8 {
            let mut r = thm5_superset(m).unwrap();
            assert_eq!(r.size() as u32, 2 * m + 1);
            assert!(r.verify().unwrap(), "m={m}");
        }
        assert!(thm5_superset(2).is_err());
        assert_eq!(thm5_supports(3), vec![vec![1, 2], vec![2, 3], vec![1, 3]]);
    }

    #[test]
    fn greedy_worked_example() {
        let sets = greedy_sets(8, 4).unwrap();
        assert_eq!(sets, vec![vec![1, 2, 3, 4], vec![1, 5, 6, 7], vec![2, 3, 5, 8], vec![2, 4, 6, 7], vec![6, 8]]);
        let mut r = greedy_2superset(8, 4).unwrap();
        assert_eq!(r.size(), 14);
        assert!(r.verify().unwrap());
    }

    #[test]
    fn greedy_eta_two_gives_m_sets() {
        for m in 4..=12 {
            let sets = greedy_sets(m, 2).unwrap();
            assert_eq!(sets.len(), m, "m={m}");
            assert!(binary_d1_rows_ok(m, &sets));
        }
    }

    #[test]
    fn greedy_results_verify() {
        for m in 4..=9u32 {
            for eta in 2..=m {
                if let Ok(mut r) = greedy_2superset(m, eta) {
                    assert!(r.verify().unwrap(), "m={m} eta={eta}");
                    let sets = greedy_sets(m as usize, eta as usize).unwrap();
                    assert!(binary_d1_rows_ok(m as usize, &sets));
                }
            }
        }
        assert!(greedy_sets(3, 2).is_err());
        assert!(greedy_sets(5, 6).is_err());
    }

    #[test]
    fn best_two_superset() {
        assert!(best_2superset_binary(8).unwrap().size() <= 14);
        assert_eq!(best_2superset_binary(3).unwrap().size(), 7);
        for m in 3..=12 {
            let r = best_2superset_binary(m).unwrap();
            assert!(r.size() as u32 >= m + 3);
            assert_eq!(r.verified(), Some(true));
        }
    }

    #[test]
    fn u_bound_examples() {
        assert_eq!(u_bound(5, 3), 19);
        assert_eq!(u_bound(3, 1), 6);
        assert_eq!(u_bound(4, 2), 9);
    }

    #[test]
    fn thm7_examples() {
        assert_eq!(thm7_bound(1, 5, 3), 19);
        assert_eq!(thm7_bound(3, 5, 1), 30);
        assert_eq!(thm7_bound(2, 5, 2), 24);
        assert_eq!(thm7_bound(3, 6, 1), 51);
    }

    #[test]
    fn lemma7_examples() {
        let f = gf2();
        let t1 = lemma4_superset(&f, 2, 3, 1).unwrap();
        let t2 = thm4_superset(3).unwrap();
        let mut r = lemma7_compose(&t1, &t2).unwrap();
        assert_eq!(r.size(), 14);
        assert_eq!(r.size(), t1.size() + t2.size());
        assert!(r.verify().unwrap());

        let t1 = thm4_superset(2).unwrap();
        let t2 = lemma4_superset(&f, 0, 2, 1).unwrap();
        assert!(lemma7_compose(&t1, &t2).unwrap().verify().unwrap());
        assert!(lemma7_compose(&t2, &t1).is_err());
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(recursive_binary(3, 6, 1, Mode::Closed).unwrap().size(), 50);
        assert_eq!(recursive_binary(4, 7, 1, Mode::Closed).unwrap().size(), 112);
        assert_eq!(recursive_binary(2, 5, 1, Mode::Closed).unwrap().size(), 20);
        assert!(recursive_binary(0, 5, 1, Mode::Closed).is_err());
    }

    #[test]
    fn recursive_best_never_larger() {
        for (d, m, s) in [(2, 6, 2), (3, 7, 2), (2, 7, 3), (1, 8, 2)] {
            let c = recursive_binary(d, m, s, Mode::Closed).unwrap().size();
            let b = recursive_binary(d, m, s, Mode::Best).unwrap().size();
            assert!(b <= c, "({d},{m},{s}) best {b} > closed {c}");
        }
    }
}
