// SPDX-License-Identifier: Apache-2.0

//! Reed-Muller codes RM_q(d, m) and their information sets.
//!
//! Points of F_q^m are numbered by `Σ_j idx(z_j)·q^(j-1)` where `idx` is the
//! position in the field's canonical ordering, so coordinate m is the most
//! significant digit and each hyperplane `x_m = α_t` is the contiguous block
//! `[t·q^(m-1), (t+1)·q^(m-1))`. Generator rows are the monomials
//! `∏ x_j^(e_j)` with `e_j ≤ q-1`, `Σ e_j ≤ d`, in graded order (total degree
//! ascending, then exponent vectors in descending lexicographic order).
//!
//! Rank computations use the Newton basis `∏_j ∏_(k<e_j) (x_j - α_k)`, which
//! spans the same row space as the monomials. Restricted to the canonical
//! information set it is triangular, so rank checks on large codes stay cheap.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::{rank_packed, Matrix};
use crate::multiset::IndexMultiset;

fn check_domain(q: u32, d: u32, m: u32) -> Result<()> {
    if q < 2 || m == 0 || (d as u64) >= m as u64 * (q as u64 - 1) {
        return Err(Error::InvalidParameters(format!(
            "RM_{q}({d},{m}) requires m >= 1 and d < m(q-1)"
        )));
    }
    Ok(())
}

/// Dimension of RM_q(d, m): the number of exponent vectors with entries at
/// most q-1 and sum at most d.
pub fn lambda(q: u32, d: u32, m: u32) -> Result<u64> {
    check_domain(q, d, m)?;
    Ok(lambda_unchecked(q, d, m))
}

/// Same count without the `d < m(q-1)` restriction (saturates at q^m).
pub fn lambda_unchecked(q: u32, d: u32, m: u32) -> u64 {
    let d = d as usize;
    // ways[s] = number of vectors over the coordinates processed so far summing to s
    let mut ways = vec![0u64; d + 1];
    ways[0] = 1;
    for _ in 0..m {
        let mut next = vec![0u64; d + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for e in 0..q as usize {
                if s + e > d {
                    break;
                }
                next[s + e] += w;
            }
        }
        ways = next;
    }
    ways.iter().sum()
}

/// Minimum distance `(q-a)·q^(m-b-1)` with `d = (q-1)b + a`, `0 ≤ a < q-1`.
pub fn dmin(q: u32, d: u32, m: u32) -> Result<u64> {
    check_domain(q, d, m)?;
    Ok(dmin_unchecked(q, d, m))
}

pub(crate) fn dmin_unchecked(q: u32, d: u32, m: u32) -> u64 {
    let a = d % (q - 1);
    let b = d / (q - 1);
    (q - a) as u64 * (q as u64).pow(m - b - 1)
}

/// Exponent vectors of all monomials of RM_q(d, m), in generator row order.
pub fn exponents(q: u32, d: u32, m: u32) -> Vec<Vec<u32>> {
    fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, left: u32, pos: usize, m: usize, cap: u32) {
        if pos == m - 1 {
            if left <= cap {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for e in (0..=left.min(cap)).rev() {
            cur.push(e);
            fill(out, cur, left - e, pos + 1, m, cap);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 0..=d {
        fill(&mut out, &mut Vec::with_capacity(m as usize), deg, 0, m as usize, q - 1);
    }
    out
}

/// The code RM_q(d, m). Stores monomial exponents and evaluation tables; the
/// full generator matrix is only built on request.
#[derive(Clone, Debug)]
pub struct RmCode {
    field: Field,
    d: u32,
    m: u32,
    n: usize,
    exps: Vec<Vec<u32>>,
    /// pow_table[i][e] = α_i^e
    pow_table: Vec<Vec<Fe>>,
    /// newton_table[i][e] = ∏_(k<e) (α_i - α_k)
    newton_table: Vec<Vec<Fe>>,
}

impl RmCode {
    pub fn new(field: &Field, d: u32, m: u32) -> Result<RmCode> {
        let q = field.q();
        check_domain(q, d, m)?;
        let n = (q as u64)
            .checked_pow(m)
            .filter(|&n| n <= usize::MAX as u64 / 2)
            .ok_or_else(|| Error::InvalidParameters(format!("q^m = {q}^{m} is too large")))? as usize;
        let exps = exponents(q, d, m);
        let els = field.elements();
        let pow_table = els.iter().map(|&a| (0..q).map(|e| field.pow(a, e as u64)).collect()).collect();
        let newton_table = els
            .iter()
            .map(|&a| {
                let mut row = Vec::with_capacity(q as usize);
                let mut acc = Fe::ONE;
                for k in 0..q as usize {
                    row.push(acc);
                    acc = field.mul(acc, field.sub(a, els[k]));
                }
                row
            })
            .collect();
        Ok(RmCode { field: field.clone(), d, m, n, exps, pow_table, newton_table })
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
    /// Code length q^m.
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    pub fn lambda(&self) -> usize {
        self.exps.len()
    }
    pub fn dmin(&self) -> u64 {
        dmin_unchecked(self.q(), self.d, self.m)
    }
    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    /// Canonical-ordering positions of the coordinates of a point.
    pub fn point_digits(&self, index: usize) -> Vec<usize> {
        let q = self.q() as usize;
        let mut v = index;
        (0..self.m)
            .map(|_| {
                let dgt = v % q;
                v /= q;
                dgt
            })
            .collect()
    }

    pub fn point_index_from_digits(&self, digits: &[usize]) -> usize {
        let q = self.q() as usize;
        digits.iter().rev().fold(0, |acc, &dgt| acc * q + dgt)
    }

    pub fn point(&self, index: usize) -> Vec<Fe> {
        self.point_digits(index).into_iter().map(|i| self.field.alpha(i)).collect()
    }

    pub fn point_index(&self, point: &[Fe]) -> Result<usize> {
        if point.len() != self.m as usize {
            return Err(Error::DimensionMismatch(format!("point of length {} for m = {}", point.len(), self.m)));
        }
        let digits: Vec<usize> = point.iter().map(|&z| self.field.index_of(z)).collect();
        Ok(self.point_index_from_digits(&digits))
    }

    /// Index range of the hyperplane `x_m = α_t`.
    pub fn hyperplane_block(&self, t: usize) -> Range<usize> {
        let block = self.n / self.q() as usize;
        t * block..(t + 1) * block
    }

    /// Generator column at one point: every monomial evaluated there.
    pub fn column(&self, index: usize) -> Vec<Fe> {
        let digits = self.point_digits(index);
        self.exps
            .iter()
            .map(|e| {
                e.iter()
                    .zip(&digits)
                    .fold(Fe::ONE, |acc, (&ej, &i)| self.field.mul(acc, self.pow_table[i][ej as usize]))
            })
            .collect()
    }

    /// Column of the Newton-basis generator at one point.
    pub fn newton_column(&self, index: usize) -> Vec<Fe> {
        let digits = self.point_digits(index);
        self.exps
            .iter()
            .map(|e| {
                let mut acc = Fe::ONE;
                for (&ej, &i) in e.iter().zip(&digits) {
                    if i < ej as usize {
                        return Fe::ZERO;
                    }
                    acc = self.field.mul(acc, self.newton_table[i][ej as usize]);
                }
                acc
            })
            .collect()
    }

    /// The λ × q^m monomial generator matrix.
    pub fn generator(&self) -> Matrix {
        self.columns_matrix(&(0..self.n).collect::<Vec<_>>())
    }

    /// Monomial generator restricted to the listed columns.
    pub fn columns_matrix(&self, points: &[usize]) -> Matrix {
        let cols: Vec<Vec<Fe>> = points.iter().map(|&p| self.column(p)).collect();
        Matrix::from_fn(&self.field, self.lambda(), points.len(), |i, j| cols[j][i])
    }

    /// Newton-basis generator restricted to the listed columns.
    pub fn newton_matrix(&self, points: &[usize]) -> Matrix {
        let cols: Vec<Vec<Fe>> = points.iter().map(|&p| self.newton_column(p)).collect();
        Matrix::from_fn(&self.field, self.lambda(), points.len(), |i, j| cols[j][i])
    }

    /// Rank of the generator restricted to the listed columns.
    pub fn column_rank(&self, points: &[usize]) -> usize {
        if self.q() == 2 {
            let words = points.len().div_ceil(64);
            // Over GF(2) the monomial x^e is 1 at a point iff the point's support contains e's.
            let mut rows: Vec<Vec<u64>> = self
                .exps
                .iter()
                .map(|e| {
                    let emask = e.iter().enumerate().fold(0usize, |acc, (j, &ej)| acc | ((ej as usize) << j));
                    let mut w = vec![0u64; words];
                    for (c, &pm) in points.iter().enumerate() {
                        if pm & emask == emask {
                            w[c / 64] |= 1 << (c % 64);
                        }
                    }
                    w
                })
                .collect();
            return rank_packed(&mut rows, points.len());
        }
        self.newton_matrix(points).rank()
    }

    pub fn multiset_rank(&self, t: &IndexMultiset) -> usize {
        self.column_rank(&t.distinct())
    }

    /// The canonical information set I_(d,m): points whose coordinate
    /// positions sum to at most d.
    pub fn info_set(&self) -> IndexMultiset {
        let q = self.q() as usize;
        let idx = self.exps.iter().map(|e| e.iter().rev().fold(0usize, |acc, &ej| acc * q + ej as usize));
        IndexMultiset::from_indices(self.n, idx).expect("exponent vectors index valid points")
    }

    pub fn is_information_set(&self, t: &IndexMultiset) -> bool {
        t.base() == self.n
            && t.len() == self.lambda()
            && t.max_multiplicity() <= 1
            && self.column_rank(&t.distinct()) == self.lambda()
    }

    /// Evaluates every monomial-coefficient vector `c` at a point: `c · G_point`.
    pub fn evaluate(&self, coeffs: &[Fe], index: usize) -> Fe {
        self.column(index)
            .iter()
            .zip(coeffs)
            .fold(Fe::ZERO, |acc, (&g, &c)| self.field.mul_add(acc, c, g))
    }

    /// One-shot version of [`Reconstructor`].
    pub fn reconstruct_evals(&self, info: &IndexMultiset, vals: &[Fe], targets: &[usize]) -> Result<Vec<Fe>> {
        let rec = Reconstructor::new(self, info)?;
        rec.reconstruct(vals, targets)
    }
}

/// Recovers codeword entries from the entries on an information set.
///
/// Factors `G_I` once; each call then costs one λ×λ product plus one column
/// evaluation per target.
#[derive(Clone, Debug)]
pub struct Reconstructor {
    code: RmCode,
    points: Vec<usize>,
    inverse: Matrix,
}

impl Reconstructor {
    pub fn new(code: &RmCode, info: &IndexMultiset) -> Result<Reconstructor> {
        if info.base() != code.len() || info.len() != code.lambda() || info.max_multiplicity() > 1 {
            return Err(Error::NotInformationSet);
        }
        let points = info.distinct();
        let inverse = code.columns_matrix(&points).inverse().map_err(|_| Error::NotInformationSet)?;
        Ok(Reconstructor { code: code.clone(), points, inverse })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Monomial coefficients of the unique codeword with the given entries on `I`.
    pub fn coefficients(&self, vals: &[Fe]) -> Result<Vec<Fe>> {
        if vals.len() != self.points.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for an information set of size {}",
                vals.len(),
                self.points.len()
            )));
        }
        self.inverse.left_mul_vec(vals)
    }

    pub fn reconstruct(&self, vals: &[Fe], targets: &[usize]) -> Result<Vec<Fe>> {
        let coeffs = self.coefficients(vals)?;
        targets
            .iter()
            .map(|&t| {
                if t >= self.code.len() {
                    return Err(Error::IndexOutOfRange { index: t, limit: self.code.len() });
                }
                Ok(match self.points.binary_search(&t) {
                    Ok(pos) => vals[pos],
                    Err(_) => self.code.evaluate(&coeffs, t),
                })
            })
            .collect()
    }
}
