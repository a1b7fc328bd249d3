// SPDX-License-Identifier: Apache-2.0

//! Dense matrices over GF(q).
//!
//! Elimination always takes the first nonzero entry of a column as pivot, so
//! every result (rank, echelon form, particular solutions) is reproducible.
//! Over GF(2) rank computations run on bit-packed rows.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::multiset::IndexMultiset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// `dst += c * src` over the field.
#[inline]
pub fn axpy(field: &Field, dst: &mut [Fe], c: Fe, src: &[Fe]) {
    if c.is_zero() {
        return;
    }
    if field.p() == 2 && c == Fe::ONE {
        for (d, s) in dst.iter_mut().zip(src) {
            d.0 ^= s.0;
        }
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.mul_add(*d, c, s);
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Fe::ONE;
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fe) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Row-major data; every value must be a field element.
    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for {rows}x{cols}", data.len())));
        }
        if let Some(bad) = data.iter().find(|v| v.value() >= field.q()) {
            return Err(Error::NotAnElement { value: bad.value(), q: field.q() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Convenience constructor from small integers (values must be < q).
    pub fn from_u32_rows(field: &Field, rows: &[&[u32]]) -> Result<Matrix> {
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&v| Fe(v as u16)).collect()).collect();
        Matrix::from_rows(field, &rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let c = self.get(i, k);
                if !c.is_zero() {
                    let (src, dst) = (other.row(k), &mut out.data[i * other.cols..(i + 1) * other.cols]);
                    axpy(&self.field, dst, c, src);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v · M`.
    pub fn left_mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} times {}x{}", v.len(), self.rows, self.cols)));
        }
        let mut out = vec![Fe::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            axpy(&self.field, &mut out, c, self.row(i));
        }
        Ok(out)
    }

    /// Matrix times column vector: `M · vᵀ`.
    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} times vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| self.field.mul_add(acc, a, b))
            })
            .collect())
    }

    /// Columns listed by the multiset, each repeated by its multiplicity.
    pub fn select_columns(&self, t: &IndexMultiset) -> Result<Matrix> {
        self.select_column_list(&t.expanded())
    }

    pub fn select_column_list(&self, cols: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange { index: bad, limit: self.cols });
        }
        Ok(Matrix::from_fn(&self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j])))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::IndexOutOfRange { index: bad, limit: self.rows });
        }
        Ok(Matrix::from_fn(&self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j)))
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn rank(&self) -> usize {
        if self.field.q() == 2 {
            rank_gf2(self)
        } else {
            self.rank_generic()
        }
    }

    /// Rank by plain elimination over the field, without the GF(2) fast path.
    pub fn rank_generic(&self) -> usize {
        let mut work = self.clone();
        work.echelon(false).len()
    }

    /// In-place forward elimination; returns pivot columns. With `reduce`
    /// the result is the reduced row echelon form.
    fn echelon(&mut self, reduce: bool) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for v in self.row_mut(r)[c..].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot_row: Vec<Fe> = self.row(r)[c..].to_vec();
            let start = if reduce { 0 } else { r + 1 };
            for i in start..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if !factor.is_zero() {
                    let neg = f.neg(factor);
                    axpy(&f, &mut self.data[i * cols + c..(i + 1) * cols], neg, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.echelon(true);
        Rref { matrix: m, pivots }
    }

    /// Finds `c` with `c · self = b`. Free variables are set to zero.
    pub fn solve_left(&self, b: &[Fe]) -> Result<Vec<Fe>> {
        if b.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("right side length {} for {} columns", b.len(), self.cols)));
        }
        // c·A = b  <=>  Aᵀ cᵀ = bᵀ; eliminate the augmented system [Aᵀ | bᵀ].
        let k = self.rows;
        let aug = Matrix::from_fn(&self.field, self.cols, k + 1, |i, j| if j < k { self.get(j, i) } else { b[i] });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&k) {
            return Err(Error::NoSolution);
        }
        let mut c = vec![Fe::ZERO; k];
        for (row, &col) in pivots.iter().enumerate() {
            c[col] = matrix.get(row, k);
        }
        Ok(c)
    }

    /// Basis of `{v : M vᵀ = 0}` as the rows of an `(n - rank) × n` matrix.
    pub fn null_space(&self) -> Matrix {
        let Rref { matrix, pivots } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut out = Matrix::zeros(&self.field, free.len(), n);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, Fe::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, self.field.neg(matrix.get(pr, fc)));
            }
        }
        out
    }

    pub fn det(&self) -> Result<Fe> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Fe::ZERO);
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            let pivot_row: Vec<Fe> = m.row(c)[c..].to_vec();
            for i in c + 1..n {
                let factor = m.get(i, c);
                if !factor.is_zero() {
                    let coef = f.neg(f.mul(factor, inv));
                    axpy(&f, &mut m.data[i * n + c..(i + 1) * n], coef, &pivot_row);
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NoSolution);
        }
        Ok(Matrix::from_fn(&self.field, n, n, |i, j| matrix.get(i, n + j)))
    }

    /// Text format: a `rows cols field` header line, then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.field);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let mut parts = header.splitn(3, char::is_whitespace);
        let parse_dim = |s: Option<&str>| {
            s.and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad matrix header '{header}'")))
        };
        let rows = parse_dim(parts.next())?;
        let cols = parse_dim(parts.next())?;
        let field = Field::parse(parts.next().ok_or_else(|| Error::Parse("matrix header lacks field".into()))?)?;
        let mut data = Vec::with_capacity(rows * cols);
        for line in lines {
            for tok in line.split_whitespace() {
                let v = tok.parse::<u32>().map_err(|_| Error::Parse(format!("bad entry '{tok}'")))?;
                data.push(field.elem(v)?);
            }
        }
        Matrix::from_vec(&field, rows, cols, data)
    }
}

/// Rank over GF(2) with rows packed into 64-bit words.
pub fn rank_gf2(m: &Matrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            let mut w = vec![0u64; words];
            for (j, v) in m.row(i).iter().enumerate() {
                if v.0 & 1 == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    rank_packed(&mut rows, m.cols)
}

/// Rank of bit-packed GF(2) rows (destroys the input).
pub fn rank_packed(rows: &mut [Vec<u64>], cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
            continue;
        };
        rows.swap(pr, r);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                for (a, b) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *a ^= b;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(&gf(2), 5).rank(), 5);
        assert_eq!(Matrix::zeros(&gf(3), 3, 4).rank(), 0);
        let rm13 = Matrix::from_u32_rows(
            &gf(2),
            &[
                &[1, 1, 1, 1, 1, 1, 1, 1],
                &[0, 1, 0, 1, 0, 1, 0, 1],
                &[0, 0, 1, 1, 0, 0, 1, 1],
                &[0, 0, 0, 0, 1, 1, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(rm13.rank(), 4);
        assert_eq!(rm13.rank_generic(), 4);
    }

    #[test]
    fn solve_examples() {
        let f2 = gf(2);
        let b = [Fe(1), Fe(0), Fe(1)];
        assert_eq!(Matrix::identity(&f2, 3).solve_left(&b).unwrap(), b.to_vec());

        let f3 = gf(3);
        let a = Matrix::from_u32_rows(&f3, &[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(a.solve_left(&[Fe(2), Fe(0)]).unwrap(), vec![Fe(2), Fe(1)]);

        let a = Matrix::from_u32_rows(&f3, &[&[1, 1, 0]]).unwrap();
        assert_eq!(a.solve_left(&[Fe(1), Fe(0), Fe(0)]).unwrap_err(), Error::NoSolution);
    }

    #[test]
    fn solve_free_variables_are_zero() {
        let f2 = gf(2);
        // rows 0 and 1 equal: second coefficient is free
        let a = Matrix::from_u32_rows(&f2, &[&[1, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(a.solve_left(&[Fe(1), Fe(1)]).unwrap(), vec![Fe(1), Fe(0), Fe(1)]);
    }

    #[test]
    fn select_columns_examples() {
        let f = gf(5);
        let m = Matrix::from_u32_rows(&f, &[&[1, 2, 3, 4], &[0, 1, 0, 1]]).unwrap();
        let t = IndexMultiset::from_indices(4, [0, 0, 3]).unwrap();
        let s = m.select_columns(&t).unwrap();
        assert_eq!(s, Matrix::from_u32_rows(&f, &[&[1, 1, 4], &[0, 0, 1]]).unwrap());
        let empty = m.select_columns(&IndexMultiset::new(4)).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (2, 0));
        let all = IndexMultiset::prefix(4, 4).unwrap();
        assert_eq!(m.select_columns(&all).unwrap(), m);
        assert!(m.select_column_list(&[4]).is_err());
    }

    #[test]
    fn null_space_examples() {
        let f2 = gf(2);
        let ones = Matrix::from_u32_rows(&f2, &[&[1, 1, 1, 1]]).unwrap();
        let ns = ones.null_space();
        assert_eq!(ns.rows(), 3);
        assert_eq!(ns.rank(), 3);
        // brute-force kernel: exactly the 8 even-weight vectors
        let mut kernel = 0;
        for v in 0..16u32 {
            let x: Vec<Fe> = (0..4).map(|i| Fe(((v >> i) & 1) as u16)).collect();
            if ones.mul_vec(&x).unwrap()[0].is_zero() {
                kernel += 1;
                assert!(ns.solve_left(&x).is_ok());
            }
        }
        assert_eq!(kernel, 8);

        assert_eq!(Matrix::identity(&f2, 4).null_space().rows(), 0);
        let z = Matrix::zeros(&gf(3), 1, 3).null_space();
        assert_eq!(z.rows(), 3);
        assert_eq!(z.rank(), 3);
    }

    #[test]
    fn det_examples() {
        assert_eq!(Matrix::identity(&gf(5), 4).det().unwrap(), Fe::ONE);
        let f3 = gf(3);
        assert_eq!(Matrix::from_u32_rows(&f3, &[&[1, 1], &[1, 2]]).unwrap().det().unwrap(), Fe(1));
        assert_eq!(Matrix::from_u32_rows(&f3, &[&[1, 2], &[2, 1]]).unwrap().det().unwrap(), Fe(0));
        assert!(matches!(Matrix::zeros(&f3, 2, 3).det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn det_is_multiplicative_on_block_triangular() {
        let f = gf(7);
        let a = Matrix::from_u32_rows(&f, &[&[2, 1], &[3, 5]]).unwrap();
        let b = Matrix::from_u32_rows(&f, &[&[4, 0, 1], &[1, 1, 1], &[6, 2, 3]]).unwrap();
        let block = Matrix::from_fn(&f, 5, 5, |i, j| match (i < 2, j < 2) {
            (true, true) => a.get(i, j),
            (false, false) => b.get(i - 2, j - 2),
            (true, false) => Fe(((i + 2 * j) % 7) as u16),
            (false, true) => Fe::ZERO,
        });
        let want = f.mul(a.det().unwrap(), b.det().unwrap());
        assert_eq!(block.det().unwrap(), want);
    }

    #[test]
    fn text_round_trip() {
        let f = gf(4);
        let m = Matrix::from_u32_rows(&f, &[&[0, 1, 2], &[3, 2, 1]]).unwrap();
        let text = m.to_text();
        assert!(text.starts_with("2 3 2^2\n"));
        assert_eq!(Matrix::from_text(&text).unwrap(), m);
        assert!(Matrix::from_text("2 2 2^1\n1 0\n0").is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(5);
        let a = Matrix::from_u32_rows(&f, &[&[1, 2, 0], &[0, 1, 4], &[3, 0, 2]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&f, 3));
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![2u32, 3, 4, 5, 7, 8]), 1usize..=8, 1usize..=8).prop_flat_map(|(q, r, c)| {
            prop::collection::vec(0..q as u16, r * c).prop_map(move |vals| {
                let f = Field::with_order(q).unwrap();
                Matrix::from_vec(&f, r, c, vals.into_iter().map(Fe).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_plus_nullity(m in matrix_strategy()) {
            let ns = m.null_space();
            prop_assert_eq!(m.rank() + ns.rows(), m.cols());
            prop_assert!(m.mul(&ns.transpose()).unwrap().is_zero());
        }

        #[test]
        fn solve_resubstitutes(m in matrix_strategy(), seed in any::<u64>()) {
            let f = m.field().clone();
            let c: Vec<Fe> = (0..m.rows()).map(|i| Fe(((seed >> (i * 3)) % f.q() as u64) as u16)).collect();
            let b = m.left_mul_vec(&c).unwrap();
            let sol = m.solve_left(&b).unwrap();
            prop_assert_eq!(m.left_mul_vec(&sol).unwrap(), b);
        }

        #[test]
        fn packed_rank_matches_generic(bits in prop::collection::vec(0u16..2, 1..400), cols in 1usize..80) {
            let f = Field::prime(2).unwrap();
            let rows = bits.len() / cols;
            prop_assume!(rows > 0);
            let m = Matrix::from_vec(&f, rows, cols, bits[..rows * cols].iter().map(|&b| Fe(b)).collect()).unwrap();
            prop_assert_eq!(rank_gf2(&m), m.rank_generic());
        }

        #[test]
        fn column_permutation_keeps_rank(m in matrix_strategy(), seed in any::<u64>()) {
            let mut cols: Vec<usize> = (0..m.cols()).collect();
            let mut s = seed;
            for i in (1..cols.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                cols.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(m.select_column_list(&cols).unwrap().rank(), m.rank());
        }
    }
}
