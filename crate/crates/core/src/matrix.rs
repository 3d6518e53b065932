//! Dense matrices over GF(q^2) with entries stored as element codes.

use serde::{Deserialize, Serialize};

use crate::error::{HermitError, Result};
use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u8>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(HermitError::Shape(format!(
                    "row {r} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u8] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u8]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.iter_rows().map(<[u8]>::to_vec).collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(HermitError::Shape(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn delete_column(&self, c: usize) -> Result<Matrix> {
        if c >= self.cols {
            return Err(HermitError::OutOfRange(format!(
                "column {c} of a matrix with {} columns",
                self.cols
            )));
        }
        let rows = self
            .iter_rows()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows, self.cols - 1)
    }

    /// Reduced row echelon form with zero rows dropped, plus the pivot columns.
    pub fn rref(&self, f: &FieldSpec) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).unwrap();
            for v in m.row_mut(r) {
                *v = f.mul(*v, inv);
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    for (v, &pv) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                        *v = f.sub(*v, f.mul(factor, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : M x^T = 0}` in reduced row echelon form.
    pub fn null_space(&self, f: &FieldSpec) -> Matrix {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                basis.set(k, pc, f.neg(r.get(row, fc)));
            }
        }
        basis.rref(f).0
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &Matrix, f: &FieldSpec) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(HermitError::Shape(format!(
                "{} columns against {}",
                self.cols, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let v = dot(self.row(i), other.row(j), f);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Whether the row space of `sub` lies in the row space of `self`.
    pub fn contains_row_space(&self, sub: &Matrix, f: &FieldSpec) -> bool {
        if sub.rows == 0 {
            return true;
        }
        self.rank(f) == self.vstack(sub).map(|m| m.rank(f)).unwrap_or(usize::MAX)
    }

    pub fn row_space_eq(&self, other: &Matrix, f: &FieldSpec) -> bool {
        self.cols == other.cols && self.rref(f).0 == other.rref(f).0
    }

    /// One row per line, element codes separated by commas.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for row in self.iter_rows() {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }
}

pub fn dot(a: &[u8], b: &[u8], f: &FieldSpec) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}
