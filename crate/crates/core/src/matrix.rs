//! Dense matrices over a [`Field`]. Vectors are columns; a subspace's basis is
//! stored as rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, a: u8) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = a;
        }
        m
    }

    pub fn diagonal(entries: &[u8]) -> Matrix {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &a) in entries.iter().enumerate() {
            m.set(i, i, a);
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<u8>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Build from row lists; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Ragged { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    /// Checks entries against the field order as well as shape.
    pub fn from_rows_checked(field: &Field, cols: usize, rows: &[Vec<u64>]) -> Result<Matrix> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let mut row = Vec::with_capacity(r.len());
            for &v in r {
                row.push(field.element(v)?.value());
            }
            out.push(row);
        }
        Matrix::from_rows(cols, &out)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|c| c.to_vec()).collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, field.add(cur, field.mul(a, other.get(t, j))));
                }
            }
        }
        out
    }

    pub fn apply(&self, field: &Field, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u8, |acc, (&a, &x)| field.add(acc, field.mul(a, x)))
            })
            .collect()
    }

    pub fn add(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, field: &Field, other: &Matrix) -> Matrix {
        self.add(field, &other.neg(field))
    }

    pub fn neg(&self, field: &Field) -> Matrix {
        self.scale(field, field.neg(1))
    }

    pub fn scale(&self, field: &Field, a: u8) -> Matrix {
        let data = self.data.iter().map(|&x| field.mul(a, x)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Entrywise Frobenius power `x -> x^(p^j)`.
    pub fn frobenius(&self, field: &Field, j: u32) -> Matrix {
        if j.is_multiple_of(field.e()) {
            return self.clone();
        }
        let data = self.data.iter().map(|&x| field.frobenius(x, j)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| self.get(r, c) == u8::from(r == c)))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, field.mul(inv, v));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = field.neg(factor);
                for j in c..self.cols {
                    let v = field.add(self.get(i, j), field.mul(nf, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref_in_place(field).len()
    }

    /// Basis (as rows) of `{v : self * v = 0}`.
    pub fn kernel(&self, field: &Field) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref_in_place(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, field.neg(m.get(pr, fc)));
            }
        }
        out
    }

    pub fn nullity(&self, field: &Field) -> usize {
        self.cols - self.rank(field)
    }

    pub fn determinant(&self, field: &Field) -> u8 {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u8;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = field.neg(det);
            }
            let pivot = m.get(c, c);
            det = field.mul(det, pivot);
            let inv = field.inv(pivot);
            for i in c + 1..n {
                let factor = field.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                let nf = field.neg(factor);
                for j in c..n {
                    let v = field.add(m.get(i, j), field.mul(nf, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self, field: &Field) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref_in_place(field);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self, field: &Field) -> bool {
        self.is_square() && self.rank(field) == self.rows
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<u8>]) -> Matrix {
        let mut m = Matrix::zeros(n, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    /// All invertible n x n matrices in index order (q^(n^2) candidates).
    pub fn general_linear(field: &Field, n: usize) -> Vec<Matrix> {
        let q = field.q();
        let total = q.pow((n * n) as u32);
        let mut out = Vec::new();
        let mut data = vec![0u8; n * n];
        for mut idx in 0..total {
            for slot in data.iter_mut() {
                *slot = (idx % q) as u8;
                idx /= q;
            }
            let m = Matrix::from_flat(n, n, data.clone());
            if m.is_invertible(field) {
                out.push(m);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip_and_det() {
        let f = Field::new(3, 1).unwrap();
        let gl = Matrix::general_linear(&f, 2);
        assert_eq!(gl.len(), 48);
        for m in &gl {
            let inv = m.inverse(&f).unwrap();
            assert!(m.mul(&f, &inv).is_identity());
            assert_ne!(m.determinant(&f), 0);
        }
        let singular = Matrix::from_rows(2, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(singular.determinant(&f), 0);
        assert_eq!(singular.inverse(&f), Err(Error::Singular));
    }

    #[test]
    fn kernel_annihilates() {
        let f = Field::new(5, 1).unwrap();
        let m = Matrix::from_rows(4, &[vec![1, 2, 3, 4], vec![2, 4, 1, 3]]).unwrap();
        let k = m.kernel(&f);
        assert_eq!(k.rows() + m.rank(&f), 4);
        for r in 0..k.rows() {
            assert!(m.apply(&f, k.row(r)).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn determinant_is_multiplicative_gf4() {
        let f = Field::new(2, 2).unwrap();
        let a = Matrix::from_rows(2, &[vec![2, 1], vec![3, 3]]).unwrap();
        let b = Matrix::from_rows(2, &[vec![1, 2], vec![0, 3]]).unwrap();
        assert_eq!(
            a.mul(&f, &b).determinant(&f),
            f.mul(a.determinant(&f), b.determinant(&f))
        );
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matches!(
            Matrix::from_rows(3, &[vec![1, 0, 0], vec![1, 0]]),
            Err(Error::Ragged { expected: 3, found: 2 })
        ));
    }
}
