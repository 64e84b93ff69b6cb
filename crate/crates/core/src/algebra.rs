//! Finite-dimensional algebras given by a basis and structure constants.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{axpy, Mat};
use crate::scalar::Scalar;

/// Sparse coordinate vector: `(basis index, coefficient)` with nonzero
/// coefficients in increasing index order.
pub type Sparse<S> = Vec<(usize, S)>;

pub fn sparse_from_dense<S: Scalar>(v: &[S]) -> Sparse<S> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse<S: Scalar>(dim: usize, v: &Sparse<S>) -> Vec<S> {
    let mut out = vec![S::zero(); dim];
    for (i, x) in v {
        out[*i] = out[*i].clone() + x.clone();
    }
    out
}

/// A named contiguous range of basis vectors recording where they came from
/// (for instance the hom-space block `E(M,X)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraWithBasis<S> {
    basis_labels: Vec<String>,
    unit: Vec<S>,
    products: BTreeMap<(usize, usize), Sparse<S>>,
    blocks: Vec<Block>,
}

/// Outcome of [`AlgebraWithBasis::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub associativity_failures: Vec<(usize, usize, usize)>,
    pub left_unit_failures: Vec<usize>,
    pub right_unit_failures: Vec<usize>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.associativity_failures.is_empty()
            && self.left_unit_failures.is_empty()
            && self.right_unit_failures.is_empty()
    }
}

impl<S: Scalar> AlgebraWithBasis<S> {
    /// `product(i, j)` returns the coordinates of `basis_i * basis_j`.
    pub fn from_products(
        basis_labels: Vec<String>,
        unit: Vec<S>,
        mut product: impl FnMut(usize, usize) -> Vec<S>,
    ) -> Result<Self> {
        let d = basis_labels.len();
        if unit.len() != d {
            return Err(Error::dims("unit length differs from basis size"));
        }
        let mut products = BTreeMap::new();
        for i in 0..d {
            for j in 0..d {
                let v = product(i, j);
                if v.len() != d {
                    return Err(Error::dims(format!("product ({i},{j}) has wrong length")));
                }
                let sp = sparse_from_dense(&v);
                if !sp.is_empty() {
                    products.insert((i, j), sp);
                }
            }
        }
        Ok(AlgebraWithBasis {
            basis_labels,
            unit,
            products,
            blocks: Vec::new(),
        })
    }

    pub fn from_sparse(
        basis_labels: Vec<String>,
        unit: Vec<S>,
        products: BTreeMap<(usize, usize), Sparse<S>>,
    ) -> Self {
        AlgebraWithBasis {
            basis_labels,
            unit,
            products,
            blocks: Vec::new(),
        }
    }

    pub fn with_blocks(mut self, blocks: Vec<Block>) -> Self {
        self.blocks = blocks;
        self
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Mutable access to a structure constant, for negative-control tests.
    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<S>) {
        let sp = sparse_from_dense(&v);
        if sp.is_empty() {
            self.products.remove(&(i, j));
        } else {
            self.products.insert((i, j), sp);
        }
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<S> {
        match self.products.get(&(i, j)) {
            Some(sp) => dense_from_sparse(self.dim(), sp),
            None => vec![S::zero(); self.dim()],
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        crate::linalg::unit_vector(self.dim(), i)
    }

    pub fn multiply(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        let d = self.dim();
        if x.len() != d || y.len() != d {
            return Err(Error::dims(format!(
                "algebra of dimension {d} got coordinates of length {} and {}",
                x.len(),
                y.len()
            )));
        }
        let mut out = vec![S::zero(); d];
        let ynz: Vec<usize> = (0..d).filter(|&j| !y[j].is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &j in &ynz {
                if let Some(sp) = self.products.get(&(i, j)) {
                    let c = xi.clone() * y[j].clone();
                    for (k, v) in sp {
                        out[*k] = out[*k].clone() + c.clone() * v.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y -> x * y`.
    pub fn left_mult_matrix(&self, x: &[S]) -> Mat<S> {
        let d = self.dim();
        let cols: Vec<Vec<S>> = (0..d)
            .map(|j| self.multiply(x, &self.basis_vector(j)).expect("dims"))
            .collect();
        Mat::from_columns(d, &cols)
    }

    /// Matrix of `y -> y * x`.
    pub fn right_mult_matrix(&self, x: &[S]) -> Mat<S> {
        let d = self.dim();
        let cols: Vec<Vec<S>> = (0..d)
            .map(|j| self.multiply(&self.basis_vector(j), x).expect("dims"))
            .collect();
        Mat::from_columns(d, &cols)
    }

    /// Trace of left multiplication by each basis vector.
    pub fn left_traces(&self) -> Vec<S> {
        let d = self.dim();
        let mut tr = vec![S::zero(); d];
        for (&(i, j), sp) in &self.products {
            // contribution of column j to diagonal entry j of L_{b_i}
            for (k, v) in sp {
                if *k == j {
                    tr[i] = tr[i].clone() + v.clone();
                }
            }
        }
        tr
    }

    /// Structure constant `basis_i * basis_j` as a sparse vector.
    pub fn sparse_product(&self, i: usize, j: usize) -> Option<&Sparse<S>> {
        self.products.get(&(i, j))
    }

    fn sparse_times_basis(&self, x: &Sparse<S>, k: usize, left: bool) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (m, c) in x {
            let key = if left { (*m, k) } else { (k, *m) };
            if let Some(sp) = self.products.get(&key) {
                for (n, v) in sp {
                    out[*n] = out[*n].clone() + c.clone() * v.clone();
                }
            }
        }
        out
    }

    /// Checks associativity on all basis triples and the unit laws.
    pub fn validate(&self) -> AlgebraReport {
        let d = self.dim();
        let mut report = AlgebraReport::default();
        let empty = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let ij = self.products.get(&(i, j)).unwrap_or(&empty);
                for k in 0..d {
                    let lhs = self.sparse_times_basis(ij, k, true);
                    let jk = self.products.get(&(j, k)).unwrap_or(&empty);
                    let rhs = self.sparse_times_basis(jk, i, false);
                    if lhs != rhs {
                        report.associativity_failures.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..d {
            let b = self.basis_vector(i);
            if self.multiply(&self.unit, &b).expect("dims") != b {
                report.left_unit_failures.push(i);
            }
            if self.multiply(&b, &self.unit).expect("dims") != b {
                report.right_unit_failures.push(i);
            }
        }
        report
    }

    pub fn is_zero_element(x: &[S]) -> bool {
        x.iter().all(|v| v.is_zero())
    }

    /// `sum c_i basis_i` helper.
    pub fn combine(&self, terms: &[(S, Vec<S>)]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (c, v) in terms {
            axpy(&mut out, c, v);
        }
        out
    }

    /// Per-block dimensions, in block order.
    pub fn block_dims(&self) -> Vec<(String, usize)> {
        self.blocks.iter().map(|b| (b.name.clone(), b.len)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    /// Group algebra of Z/2 with basis {1, c}, c*c = 1.
    fn group_z2() -> AlgebraWithBasis<Rational> {
        AlgebraWithBasis::from_products(
            vec!["1".into(), "c".into()],
            vec![q(1), q(0)],
            |i, j| {
                if (i + j) % 2 == 0 {
                    vec![q(1), q(0)]
                } else {
                    vec![q(0), q(1)]
                }
            },
        )
        .unwrap()
    }

    #[test]
    fn group_algebra_validates() {
        let a = group_z2();
        assert!(a.validate().passed());
        let c = a.basis_vector(1);
        assert_eq!(a.multiply(&c, &c).unwrap(), a.unit().to_vec());
    }

    #[test]
    fn corrupted_constant_is_reported() {
        let mut a = group_z2();
        // 1 * c := 0
        a.set_product(0, 1, vec![q(0), q(0)]);
        let r = a.validate();
        assert!(!r.passed());
        assert!(r.associativity_failures.contains(&(0, 1, 1)));
        assert_eq!(r.left_unit_failures, vec![1]);
    }

    #[test]
    fn multiply_length_mismatch() {
        let a = group_z2();
        assert!(a.multiply(&[q(1)], &[q(1), q(0)]).is_err());
        let zero = vec![q(0), q(0)];
        assert_eq!(a.multiply(&a.basis_vector(1), &zero).unwrap(), zero);
    }

    #[test]
    fn left_traces_of_group_algebra() {
        let a = group_z2();
        assert_eq!(a.left_traces(), vec![q(2), q(0)]);
    }
}
