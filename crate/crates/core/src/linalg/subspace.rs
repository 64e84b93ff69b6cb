use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::mat::{axpy, unit_vector, Mat};

/// A subspace of `S^n` stored by its reduced row-echelon basis, so equal
/// subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis<S> {
    ambient: usize,
    vectors: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

/// Complement of a subspace `b` inside `a`, with the coordinate map
/// `a -> a/b`.
#[derive(Clone, Debug)]
pub struct Quotient<S> {
    /// Representatives in `a` of a basis of `a/b`.
    pub complement: Vec<Vec<S>>,
    /// `complement.len() x ambient`; correct on vectors of `a`.
    pub projection: Mat<S>,
}

impl<S: Scalar> SubspaceBasis<S> {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit_vector(ambient, i)))
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<S>>) -> Self {
        let rows: Vec<Vec<S>> = vectors.into_iter().collect();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        if rows.is_empty() || ambient == 0 {
            return Self::zero(ambient);
        }
        let r = Mat::from_row_vectors(ambient, &rows).rref();
        let vectors = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
        SubspaceBasis {
            ambient,
            vectors,
            pivots: r.pivot_cols,
        }
    }

    /// Column space of `m`.
    pub fn image_of(m: &Mat<S>) -> Self {
        let cols: Vec<Vec<S>> = (0..m.cols()).map(|c| m.column(c)).collect();
        Self::span(m.rows(), cols)
    }

    pub fn kernel_of(m: &Mat<S>) -> Self {
        Self::span(m.cols(), m.kernel_vectors())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<S>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the stored basis, or `None` when `v` lies outside.
    pub fn coords(&self, v: &[S]) -> Option<Vec<S>> {
        assert_eq!(v.len(), self.ambient);
        let c: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![S::zero(); self.ambient];
        for (ci, row) in c.iter().zip(&self.vectors) {
            axpy(&mut rebuilt, ci, row);
        }
        (rebuilt.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis<S>) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &SubspaceBasis<S>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::dims(format!(
                "subspaces of S^{} and S^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis<S>) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::span(
            self.ambient,
            self.vectors.iter().chain(&other.vectors).cloned(),
        ))
    }

    pub fn intersect(&self, other: &SubspaceBasis<S>) -> Result<Self> {
        self.check_ambient(other)?;
        // Solve sum c_i a_i - sum d_j b_j = 0.
        let cols: Vec<Vec<S>> = self
            .vectors
            .iter()
            .cloned()
            .chain(other.vectors.iter().map(|b| b.iter().map(|x| -x.clone()).collect()))
            .collect();
        if cols.is_empty() {
            return Ok(Self::zero(self.ambient));
        }
        let m = Mat::from_columns(self.ambient, &cols);
        let vecs = m.kernel_vectors().into_iter().map(|k| {
            let mut v = vec![S::zero(); self.ambient];
            for (ci, a) in k.iter().zip(&self.vectors) {
                axpy(&mut v, ci, a);
            }
            v
        });
        Ok(Self::span(self.ambient, vecs))
    }

    /// Linear functionals (as rows) whose common kernel is this subspace.
    pub fn annihilator(&self) -> Mat<S> {
        if self.vectors.is_empty() {
            return Mat::identity(self.ambient);
        }
        let m = Mat::from_row_vectors(self.ambient, &self.vectors);
        let ann = m.kernel_vectors();
        Mat::from_row_vectors(self.ambient, &ann)
    }

    /// `{v : m v in self}` where `m` maps into this subspace's ambient space.
    pub fn preimage(&self, m: &Mat<S>) -> Result<Self> {
        if m.rows() != self.ambient {
            return Err(Error::dims(format!(
                "preimage: map has {} rows, subspace ambient is {}",
                m.rows(),
                self.ambient
            )));
        }
        let cond = self.annihilator().mul(m);
        Ok(Self::kernel_of(&cond))
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Mat<S>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(Error::dims("image_under: map domain differs from ambient"));
        }
        Ok(Self::span(
            m.rows(),
            self.vectors.iter().map(|v| m.mul_vec(v)),
        ))
    }

    /// Complement of `sub` inside `self` and coordinates on the quotient.
    pub fn quotient(&self, sub: &SubspaceBasis<S>) -> Result<Quotient<S>> {
        self.check_ambient(sub)?;
        if !self.contains_subspace(sub) {
            return Err(Error::dims("quotient: subspace not contained"));
        }
        let mut acc = sub.clone();
        let mut complement = Vec::new();
        for v in &self.vectors {
            if !acc.contains(v) {
                complement.push(v.clone());
                acc = Self::span(self.ambient, acc.vectors.iter().cloned().chain([v.clone()]));
            }
        }
        let cols: Vec<Vec<S>> = complement.iter().chain(&sub.vectors).cloned().collect();
        let projection = if cols.is_empty() {
            Mat::zeros(0, self.ambient)
        } else {
            let li = Mat::from_columns(self.ambient, &cols).left_inverse()?;
            li.block(0, 0, complement.len(), self.ambient)
        };
        Ok(Quotient {
            complement,
            projection,
        })
    }

    /// Complement inside the whole ambient space spanned by standard vectors
    /// at non-pivot positions.
    pub fn standard_complement(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, F2};
    use num_traits::{One, Zero};

    fn f2(v: &[u8]) -> Vec<F2> {
        v.iter().map(|&x| if x == 1 { F2::one() } else { F2::zero() }).collect()
    }

    #[test]
    fn intersection_in_f2_cubed() {
        let a = SubspaceBasis::span(3, [f2(&[1, 0, 0]), f2(&[0, 1, 0])]);
        let b = SubspaceBasis::span(3, [f2(&[0, 1, 0]), f2(&[0, 0, 1])]);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, SubspaceBasis::span(3, [f2(&[0, 1, 0])]));
        let s = a.sum(&b).unwrap();
        assert_eq!(a.dim() + b.dim(), i.dim() + s.dim());
    }

    #[test]
    fn idempotent_intersection_and_preimage_of_zero_map() {
        let a = SubspaceBasis::span(2, [vec![Rational::from_i64(1), Rational::from_i64(2)]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let z = Mat::<Rational>::zeros(2, 3);
        assert_eq!(a.preimage(&z).unwrap(), SubspaceBasis::full(3));
    }

    #[test]
    fn canonical_form() {
        let q = |x: i64| Rational::from_i64(x);
        let a = SubspaceBasis::span(2, [vec![q(1), q(1)], vec![q(1), q(-1)]]);
        let b = SubspaceBasis::span(2, [vec![q(3), q(0)], vec![q(0), q(5)]]);
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_coordinates() {
        let q = |x: i64| Rational::from_i64(x);
        let a = SubspaceBasis::full(3);
        let b = SubspaceBasis::span(3, [vec![q(1), q(1), q(0)]]);
        let quo = a.quotient(&b).unwrap();
        assert_eq!(quo.complement.len(), 2);
        // b maps to zero in the quotient
        assert!(quo.projection.mul_vec(&[q(1), q(1), q(0)]).iter().all(|x| x.is_zero()));
        for (i, c) in quo.complement.iter().enumerate() {
            let coords = quo.projection.mul_vec(c);
            for (j, x) in coords.iter().enumerate() {
                assert_eq!(*x, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = SubspaceBasis::<Rational>::full(2);
        let b = SubspaceBasis::<Rational>::full(3);
        assert!(a.intersect(&b).is_err());
    }
}
