//! Dense matrices: exact integer matrices with fraction-free elimination,
//! and matrices over a finite field with row reduction and kernel bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Matrix over the integers. Entries are arbitrary precision; nothing in
/// here rounds or overflows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl ZMat {
    pub fn new(data: Vec<Vec<BigInt>>) -> Result<ZMat> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::BadShape("rows have unequal lengths".into()));
        }
        Ok(ZMat { rows, cols, data })
    }

    pub fn from_i64(data: &[&[i64]]) -> ZMat {
        ZMat::new(data.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
            .unwrap()
    }

    pub fn zero(rows: usize, cols: usize) -> ZMat {
        ZMat { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> ZMat {
        let mut m = ZMat::zero(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> ZMat {
        let mut t = ZMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn add(&self, rhs: &ZMat) -> Result<ZMat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: rhs.rows * rhs.cols });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(ZMat { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &BigInt) -> ZMat {
        let data = self.data.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        ZMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, rhs: &ZMat) -> Result<ZMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = ZMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i][j] += a * &rhs.data[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Entrywise reduction to representatives in [0, q).
    pub fn reduce_mod(&self, q: u64) -> ZMat {
        let q = BigInt::from(q);
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| x.mod_floor(&q)).collect())
            .collect();
        ZMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination. Exact.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::BadShape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.data.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Bareiss: division by the previous pivot is exact
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> ZMat {
        let data = self
            .data
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != drop_row)
            .map(|(_, r)| {
                r.iter().enumerate().filter(|(j, _)| *j != drop_col).map(|(_, v)| v.clone()).collect()
            })
            .collect();
        ZMat { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Adjugate (transposed cofactor matrix): `self · adj = det · I`.
    pub fn adjugate(&self) -> Result<ZMat> {
        if self.rows != self.cols {
            return Err(Error::BadShape("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ZMat::zero(0, 0));
        }
        let mut adj = ZMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det()?;
                adj.data[j][i] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        Ok(adj)
    }

    /// Inverse modulo q (q need not be prime; the determinant must be a
    /// unit mod q). Entries of the result are in [0, q).
    pub fn inverse_mod(&self, q: u64) -> Result<ZMat> {
        let det = self.det()?;
        let det_inv = match modinv(&det, q) {
            Some(v) => v,
            None => return Err(Error::NotInvertibleModQ(q)),
        };
        Ok(self.adjugate()?.scale(&det_inv).reduce_mod(q))
    }

    /// Solve `self · x ≡ b (mod q)` by Cramer's rule; requires det to be a
    /// unit mod q. Much cheaper than a full adjugate for a single column.
    pub fn solve_mod(&self, b: &[BigInt], q: u64) -> Result<Vec<BigInt>> {
        if self.rows != self.cols {
            return Err(Error::BadShape("solve on a non-square matrix".into()));
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let det = self.det()?;
        let det_inv = match modinv(&det, q) {
            Some(v) => v,
            None => return Err(Error::NotInvertibleModQ(q)),
        };
        let qq = BigInt::from(q);
        let mut x = Vec::with_capacity(self.rows);
        for j in 0..self.cols {
            let mut replaced = self.clone();
            for i in 0..self.rows {
                replaced.data[i][j] = b[i].clone();
            }
            x.push((replaced.det()? * &det_inv).mod_floor(&qq));
        }
        Ok(x)
    }
}

/// Inverse of a mod q, or None when gcd(a, q) ≠ 1. Result in [0, q).
pub fn modinv(a: &BigInt, q: u64) -> Option<BigInt> {
    let qq = BigInt::from(q);
    let a = a.mod_floor(&qq);
    let e = a.extended_gcd(&qq);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(&qq))
    } else {
        None
    }
}

/// Centered representative of v mod q in [-q/2, q/2).
pub fn center_mod(v: &BigInt, q: u64) -> BigInt {
    let qq = BigInt::from(q);
    let mut r = v.mod_floor(&qq);
    if &r * 2 >= qq {
        r -= BigInt::from(q);
    }
    r
}

/// Centered representative of v mod q in (-q/2, q/2].
pub fn center_mod_upper(v: &BigInt, q: u64) -> BigInt {
    let qq = BigInt::from(q);
    let mut r = v.mod_floor(&qq);
    if &r * 2 > qq {
        r -= BigInt::from(q);
    }
    r
}

/// Matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<FieldElement>>,
}

impl FMat {
    /// Rectangular matrix from rows; all entries must belong to `field`.
    /// An empty row list is a 0×cols matrix.
    pub fn new(field: &Field, cols: usize, data: Vec<Vec<FieldElement>>) -> Result<FMat> {
        for r in &data {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            if r.iter().any(|x| x.field() != field) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(FMat { field: field.clone(), rows: data.len(), cols, data })
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> FMat {
        FMat {
            field: field.clone(),
            rows,
            cols,
            data: vec![vec![field.zero(); cols]; rows],
        }
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

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[Vec<FieldElement>] {
        &self.data
    }

    pub fn transpose(&self) -> FMat {
        let mut data = vec![Vec::with_capacity(self.rows); self.cols];
        for r in &self.data {
            for (j, x) in r.iter().enumerate() {
                data[j].push(x.clone());
            }
        }
        FMat { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, rhs: &FMat) -> Result<FMat> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = FMat::zero(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.mul(&rhs.data[k][j])?;
                    out.data[i][j] = out.data[i][j].add(&t)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc = self.field.zero();
            for (a, b) in row.iter().zip(v) {
                acc = acc.add(&a.mul(b)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Reduced row-echelon form; returns the reduced matrix and the pivot
    /// column indices (one per nonzero row).
    pub fn rref(&self) -> (FMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pivot_row) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
                continue;
            };
            m.data.swap(r, pivot_row);
            let inv = m.data[r][c].inv().unwrap();
            for j in c..m.cols {
                m.data[r][j] = m.data[r][j].mul(&inv).unwrap();
            }
            for i in 0..m.rows {
                if i != r && !m.data[i][c].is_zero() {
                    let factor = m.data[i][c].clone();
                    for j in c..m.cols {
                        let t = factor.mul(&m.data[r][j]).unwrap();
                        m.data[i][j] = m.data[i][j].sub(&t).unwrap();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {x : self·x = 0}, one basis vector per
    /// returned row. Empty when the kernel is trivial.
    pub fn right_kernel(&self) -> Vec<Vec<FieldElement>> {
        let (rr, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = rr.data[row][free].neg();
            }
            basis.push(v);
        }
        basis
    }
}
