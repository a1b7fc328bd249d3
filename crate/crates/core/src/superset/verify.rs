// SPDX-License-Identifier: Apache-2.0

//! Exhaustive verification of S-information super-sets.
//!
//! Removing copies of an index only matters once every copy is gone, so a
//! removal pattern is a set R of distinct indices whose multiplicities sum to
//! at most S, and it is enough to check the maximal ones. With an information
//! set I inside the support U, write the generator on U in systematic form
//! `P = G_I^(-1) G_U`. The columns left after removing R have rank λ exactly
//! when the rows of P indexed by `R ∩ I`, restricted to the surviving columns
//! outside I, are linearly independent. Each check therefore touches at most
//! S rows.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::multiset::IndexMultiset;
use crate::parallel::pool;
use crate::rm::RmCode;

fn check_budget(code: &RmCode, s: usize, t: &IndexMultiset) -> Result<()> {
    let dmin = code.dmin();
    if s == 0 || s as u64 >= dmin {
        return Err(Error::StragglerBudget { s, dmin });
    }
    if t.base() != code.len() {
        return Err(Error::DimensionMismatch(format!(
            "multiset over {} points for a code of length {}",
            t.base(),
            code.len()
        )));
    }
    if t.len() <= s {
        return Err(Error::InvalidParameters(format!("|T| = {} must exceed S = {s}", t.len())));
    }
    Ok(())
}

/// Number of distinct S-sub-multisets of `t` (identical removals counted once).
pub fn removal_pattern_count(t: &IndexMultiset, s: usize) -> u128 {
    let mut poly = vec![0u128; s + 1];
    poly[0] = 1;
    for &(_, c) in t.entries() {
        let c = c as usize;
        let mut next = vec![0u128; s + 1];
        for (k, &v) in poly.iter().enumerate() {
            if v == 0 {
                continue;
            }
            for j in 0..=c.min(s - k) {
                next[k + j] = next[k + j].saturating_add(v);
            }
        }
        poly = next;
    }
    poly[s]
}

struct Systematic {
    field: Field,
    weights: Vec<usize>,
    /// For each support position: its row of P if it is in I.
    pivot_row: Vec<Option<usize>>,
    /// Support positions outside I, in order.
    free_cols: Vec<usize>,
    /// P restricted to the free columns, one row per pivot.
    rows: Vec<Vec<Fe>>,
}

impl Systematic {
    fn build(code: &RmCode, support: &[usize], weights: Vec<usize>) -> Option<Systematic> {
        let rref = code.newton_matrix(support).rref();
        if rref.pivots.len() < code.lambda() {
            return None;
        }
        let mut pivot_row = vec![None; support.len()];
        for (r, &p) in rref.pivots.iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        let free_cols: Vec<usize> = (0..support.len()).filter(|&p| pivot_row[p].is_none()).collect();
        let rows = (0..rref.pivots.len())
            .map(|r| free_cols.iter().map(|&c| rref.matrix.get(r, c)).collect())
            .collect();
        Some(Systematic { field: code.field().clone(), weights, pivot_row, free_cols, rows })
    }

    /// Whether the support minus `removed` (sorted positions) still has full rank.
    fn survives(&self, removed: &[usize]) -> bool {
        let pivots: Vec<usize> = removed.iter().filter_map(|&p| self.pivot_row[p]).collect();
        if pivots.is_empty() {
            return true;
        }
        let keep: Vec<usize> = (0..self.free_cols.len())
            .filter(|&j| removed.binary_search(&self.free_cols[j]).is_err())
            .collect();
        if keep.len() < pivots.len() {
            return false;
        }
        let mut mat: Vec<Vec<Fe>> = pivots.iter().map(|&r| keep.iter().map(|&j| self.rows[r][j]).collect()).collect();
        small_rank(&self.field, &mut mat) == pivots.len()
    }

    /// Depth-first walk over removal sets whose smallest element is `first`.
    fn all_maximal_survive(&self, budget: usize, first: usize) -> bool {
        let n = self.weights.len();
        let mut chosen = vec![first];
        self.dfs(budget - self.weights[first], first + 1, n, &mut chosen)
    }

    fn dfs(&self, left: usize, next: usize, n: usize, chosen: &mut Vec<usize>) -> bool {
        let mut any_extension = false;
        for p in next..n {
            if self.weights[p] <= left {
                any_extension = true;
                chosen.push(p);
                let ok = self.dfs(left - self.weights[p], p + 1, n, chosen);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
        }
        if any_extension {
            // Every superset was checked, and survival is monotone.
            return true;
        }
        self.survives(chosen)
    }
}

fn small_rank(field: &Field, rows: &mut [Vec<Fe>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        let pivot: Vec<Fe> = rows[r][c..].iter().map(|&v| field.mul(v, inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if !f.is_zero() {
                let neg = field.neg(f);
                crate::linalg::axpy(field, &mut row[c..], neg, &pivot);
            }
        }
        r += 1;
    }
    r
}

/// True iff every (|T| - S)-sub-multiset of `t` contains an information set.
pub fn verify_superset(code: &RmCode, s: usize, t: &IndexMultiset) -> Result<bool> {
    check_budget(code, s, t)?;
    let support = t.distinct();
    let weights: Vec<usize> = t.entries().iter().map(|&(_, c)| c as usize).collect();
    let Some(sys) = Systematic::build(code, &support, weights) else {
        return Ok(false);
    };
    let n = support.len();
    Ok(pool().install(|| {
        (0..n)
            .into_par_iter()
            .filter(|&p| sys.weights[p] <= s)
            .all(|p| sys.all_maximal_survive(s, p))
    }))
}

/// Reference verifier: rank of the remainder for every distinct S-removal.
pub fn verify_superset_naive(code: &RmCode, s: usize, t: &IndexMultiset) -> Result<bool> {
    check_budget(code, s, t)?;
    let entries = t.entries().to_vec();
    let lambda = code.lambda();
    let mut removal = vec![0u32; entries.len()];
    fn walk(
        code: &RmCode,
        entries: &[(usize, u32)],
        removal: &mut Vec<u32>,
        pos: usize,
        left: usize,
        lambda: usize,
    ) -> bool {
        if pos == entries.len() {
            if left > 0 {
                return true;
            }
            let kept: Vec<usize> = entries
                .iter()
                .zip(removal.iter())
                .filter(|(&(_, c), &r)| c > r)
                .map(|(&(i, _), _)| i)
                .collect();
            return code.column_rank(&kept) == lambda;
        }
        let c = entries[pos].1 as usize;
        for k in 0..=c.min(left) {
            removal[pos] = k as u32;
            if !walk(code, entries, removal, pos + 1, left - k, lambda) {
                return false;
            }
        }
        removal[pos] = 0;
        true
    }
    Ok(walk(code, &entries, &mut removal, 0, s, lambda))
}
