pub mod algebra;
pub mod cli;
pub mod error;
pub mod homological;
pub mod linalg;
pub mod orbit;
pub mod presentation;
pub mod problem;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod tilting;

pub use algebra::{AlgebraReport, AlgebraWithBasis, Block};
pub use error::{Error, Result};
pub use linalg::{Mat, SubspaceBasis};
pub use quiver::{build_path_algebra, Path, PathAlgebra, Quiver, RelationSet};
pub use scalar::{FieldSpec, Fp, Rational, Scalar, F2, F3, F5, F7};
