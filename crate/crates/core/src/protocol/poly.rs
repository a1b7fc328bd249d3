// SPDX-License-Identifier: Apache-2.0

//! Sparse multivariate polynomials and dense univariate helpers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};

/// Polynomial in `n_vars` variables with individual degrees at most q-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, Fe>,
}

impl MultiPoly {
    pub fn zero(field: &Field, n_vars: usize) -> MultiPoly {
        MultiPoly { field: field.clone(), n_vars, terms: BTreeMap::new() }
    }

    /// Adds up repeated exponent vectors and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Fe)>>(field: &Field, n_vars: usize, terms: I) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(field, n_vars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Fe) -> Result<()> {
        if exps.len() != self.n_vars {
            return Err(Error::DimensionMismatch(format!("exponent vector of length {} for {} variables", exps.len(), self.n_vars)));
        }
        if let Some(&e) = exps.iter().find(|&&e| e >= self.field.q()) {
            return Err(Error::InvalidParameters(format!("individual degree {e} exceeds q-1 = {}", self.field.q() - 1)));
        }
        let entry = self.terms.entry(exps).or_insert(Fe::ZERO);
        *entry = self.field.add(*entry, c);
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Fe> {
        &self.terms
    }

    /// Largest Σe over the terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Fe]) -> Result<Fe> {
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch(format!("point of length {} for {} variables", x.len(), self.n_vars)));
        }
        let f = &self.field;
        // powers[j][e] = x_j^e
        let max_e = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Fe>> = x
            .iter()
            .map(|&v| {
                let mut p = vec![Fe::ONE; max_e + 1];
                for e in 1..=max_e {
                    p[e] = f.mul(p[e - 1], v);
                }
                p
            })
            .collect();
        Ok(self.terms.iter().fold(Fe::ZERO, |acc, (e, &c)| {
            let mono = e.iter().enumerate().fold(c, |m, (j, &ej)| f.mul(m, powers[j][ej as usize]));
            f.add(acc, mono)
        }))
    }
}

impl std::fmt::Display for MultiPoly {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            write!(out, "{c}")?;
            for (j, &ej) in e.iter().enumerate() {
                match ej {
                    0 => {}
                    1 => write!(out, "*x{}", j + 1)?,
                    _ => write!(out, "*x{}^{ej}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Random exponent vector with total degree exactly `deg` and entries ≤ cap.
fn random_exponents<R: Rng>(rng: &mut R, n_vars: usize, deg: u32, cap: u32) -> Vec<u32> {
    let mut e = vec![0u32; n_vars];
    let mut left = deg;
    while left > 0 {
        let j = rng.gen_range(0..n_vars);
        if e[j] < cap {
            e[j] += 1;
            left -= 1;
        }
    }
    e
}

/// Seeded random polynomial of total degree exactly `d` (a few terms, one of top degree).
pub fn poly_random(field: &Field, n_vars: usize, d: u32, seed: u64) -> Result<MultiPoly> {
    let cap = field.q() - 1;
    if n_vars == 0 || d as u64 > n_vars as u64 * cap as u64 {
        return Err(Error::InvalidParameters(format!("degree {d} impossible with {n_vars} variables over GF({})", field.q())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero = |rng: &mut ChaCha8Rng| Fe(rng.gen_range(1..field.q()) as u16);
    let mut p = MultiPoly::zero(field, n_vars);
    let top = random_exponents(&mut rng, n_vars, d, cap);
    let c = nonzero(&mut rng);
    p.add_term(top.clone(), c)?;
    for _ in 0..rng.gen_range(0..6) {
        let deg = rng.gen_range(0..=d);
        let e = random_exponents(&mut rng, n_vars, deg, cap);
        if e == top {
            continue;
        }
        let c = nonzero(&mut rng);
        p.add_term(e, c)?;
    }
    Ok(p)
}

/// Monomial coefficients (low degree first) of the polynomial of degree
/// below `xs.len()` through the given points. Newton divided differences.
pub fn interpolate(field: &Field, xs: &[Fe], ys: &[Fe]) -> Result<Vec<Fe>> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch("interpolation needs as many values as points".into()));
    }
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = field.sub(xs[i], xs[i - level]);
            if den.is_zero() {
                return Err(Error::InvalidParameters("repeated interpolation point".into()));
            }
            dd[i] = field.div(field.sub(dd[i], dd[i - 1]), den)?;
        }
    }
    // Horner over the Newton form: p = dd0 + (x - x0)(dd1 + (x - x1)(...))
    let mut coeffs = vec![Fe::ZERO; n.max(1)];
    for i in (0..n).rev() {
        // coeffs ← coeffs·(x - x_i) + dd_i
        let mut next = vec![Fe::ZERO; n.max(1)];
        for (k, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + 1 < next.len() {
                next[k + 1] = field.add(next[k + 1], c);
            }
            next[k] = field.sub(next[k], field.mul(c, xs[i]));
        }
        next[0] = field.add(next[0], dd[i]);
        coeffs = next;
    }
    if n == 0 {
        coeffs.clear();
    }
    Ok(coeffs)
}

pub fn eval_univariate(field: &Field, coeffs: &[Fe], x: Fe) -> Fe {
    coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| field.mul_add(c, acc, x))
}

/// Lagrange weights `L_i(x)` for the nodes `ws`.
pub fn lagrange_weights(field: &Field, ws: &[Fe], x: Fe) -> Result<Vec<Fe>> {
    (0..ws.len())
        .map(|i| {
            let mut num = Fe::ONE;
            let mut den = Fe::ONE;
            for (l, &w) in ws.iter().enumerate() {
                if l != i {
                    num = field.mul(num, field.sub(x, w));
                    den = field.mul(den, field.sub(ws[i], w));
                }
            }
            field.div(num, den).map_err(|_| Error::InvalidParameters("repeated interpolation node".into()))
        })
        .collect()
}
