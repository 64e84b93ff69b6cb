use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix over an exact field.
///
/// A linear map `V -> W` is stored as a `dim W x dim V` matrix acting on
/// column vectors, so the matrix of "f then g" is `g * f`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref<S> {
    pub reduced: Mat<S>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<S>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::dims(format!(
                "expected {rows}x{cols} matrix, got {} rows",
                entries.len()
            )));
        }
        Ok(Mat {
            rows,
            cols,
            data: entries.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_row_vectors(cols: usize, rows: &[Vec<S>]) -> Self {
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Mat::<S>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    pub fn add(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.shape(), rhs.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.shape(), rhs.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn hstack(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Mat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[Mat<S>]) -> Mat<S> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat<S>) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat<S> {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat<S> {
        Self::from_fn(idx.len(), self.cols, |r, c| self[(idx[r], c)].clone())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Reduced row-echelon form, pivoting on the first nonzero entry of each
    /// column in row order (deterministic).
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(sel, prow);
            let inv = m[(prow, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m[(prow, c)].clone() * inv.clone();
                m[(prow, c)] = v;
            }
            for r in 0..m.rows {
                if r == prow || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(prow, c)].is_zero() {
                        continue;
                    }
                    let v = m[(r, c)].clone() - factor.clone() * m[(prow, c)].clone();
                    m[(r, c)] = v;
                }
            }
            pivot_cols.push(col);
            prow += 1;
        }
        Rref {
            rank: pivot_cols.len(),
            reduced: m,
            pivot_cols,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical kernel basis: one vector per free column, with a 1 in that
    /// column and zeros in the other free columns.
    pub fn kernel_vectors(&self) -> Vec<Vec<S>> {
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivot_cols.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -reduced[(r, free)].clone();
            }
            out.push(v);
        }
        out
    }

    /// Particular solution of `self * x = b` with every free variable zero.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Mat::from_columns(self.rows, &[b.to_vec()]));
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = aug.rref();
        if pivot_cols.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &c) in pivot_cols.iter().enumerate() {
            x[c] = reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_mat(&self, b: &Mat<S>) -> Option<Mat<S>> {
        let aug = self.hstack(b);
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = aug.rref();
        if pivot_cols.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (r, &c) in pivot_cols.iter().enumerate() {
            for j in 0..b.cols {
                x[(c, j)] = reduced[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Left inverse of a matrix with full column rank.
    pub fn left_inverse(&self) -> Result<Mat<S>> {
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n));
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = aug.rref();
        let leading = pivot_cols.iter().filter(|&&c| c < self.cols).count();
        if leading != self.cols {
            return Err(Error::dims("left inverse requires full column rank"));
        }
        Ok(reduced.block(0, self.cols, self.cols, n))
    }

    pub fn inverse(&self) -> Option<Mat<S>> {
        if !self.is_square() {
            return None;
        }
        self.left_inverse().ok()
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn axpy<S: Scalar>(acc: &mut [S], s: &S, v: &[S]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + s.clone() * x.clone();
        }
    }
}

pub fn vec_is_zero<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_scale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn unit_vector<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// Matrix of a linear map given by its action on standard basis vectors.
pub fn matrix_of<S: Scalar>(
    dim_in: usize,
    dim_out: usize,
    mut f: impl FnMut(&[S]) -> Vec<S>,
) -> Mat<S> {
    let cols: Vec<Vec<S>> = (0..dim_in)
        .map(|i| {
            let out = f(&unit_vector(dim_in, i));
            assert_eq!(out.len(), dim_out);
            out
        })
        .collect();
    Mat::from_columns(dim_out, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, F2};
    use num_traits::One;

    fn q(rows: &[&[i64]]) -> Mat<Rational> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat::from_fn(r, c, |i, j| Rational::from_i64(rows[i][j]))
    }

    #[test]
    fn rref_examples() {
        let id = Mat::<Rational>::identity(2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 2);

        let z = Mat::<Rational>::zeros(3, 2);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);

        // hand reduction: [[1,2],[2,4]] -> [[1,2],[0,0]]
        let r = q(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.reduced, q(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_over_f2() {
        let m = Mat::<F2>::from_fn(2, 2, |_, _| F2::one());
        let k = m.kernel_vectors();
        assert_eq!(k, vec![vec![F2::one(), F2::one()]]);
    }

    #[test]
    fn solve_and_inverse() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        let x = m.solve(&[Rational::from_i64(3), Rational::from_i64(2)]).unwrap();
        assert_eq!(x, vec![Rational::from_i64(1), Rational::from_i64(1)]);
        let sing = q(&[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&[Rational::from_i64(1), Rational::from_i64(0)]).is_none());
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn left_inverse_of_tall_matrix() {
        let m = q(&[&[1, 0], &[2, 1], &[0, 3]]);
        let l = m.left_inverse().unwrap();
        assert_eq!(l.mul(&m), Mat::identity(2));
    }
}
