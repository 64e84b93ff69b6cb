//! Dense exact linear algebra.

mod mat;
mod subspace;

pub use mat::{axpy, dot, matrix_of, unit_vector, vec_add, vec_is_zero, vec_scale, vec_sub, Mat, Rref};
pub use subspace::{Quotient, SubspaceBasis};

/// Kernel and image of a matrix as canonical subspaces.
pub fn kernel_image<S: crate::scalar::Scalar>(m: &Mat<S>) -> (SubspaceBasis<S>, SubspaceBasis<S>) {
    (SubspaceBasis::kernel_of(m), SubspaceBasis::image_of(m))
}
