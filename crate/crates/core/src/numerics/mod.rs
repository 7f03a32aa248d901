//! Small dense linear algebra plus scalar root finding and maximization.

mod eigen;
mod matrix;
mod solve;
mod svd;

pub use eigen::{hermitian_eigen, EigenDecomposition4, HERMITIAN_TOL};
pub use matrix::{ComplexMatrix4, Matrix2, RealMatrix3, C64, I, ONE, ZERO};
pub use solve::{bisect_root, maximize_unimodal, Root, EXTREMUM_TOL, ROOT_TOL};
pub use svd::{svd3, SingularDecomposition3, DET_ZERO_TOL};
