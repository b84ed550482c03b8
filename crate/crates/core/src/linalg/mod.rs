//! Dense symmetric linear algebra: Cholesky, Jacobi eigensolvers, SVD,
//! nullspaces and metric orthonormalization.

mod cholesky;
mod eigen;
mod matrix;
mod orth;
mod svd;

pub use cholesky::{cholesky, scaled_cholesky, solve_lower, solve_lower_transpose, PIVOT_REL_TOL};
pub use eigen::{gen_sym_eig, sym_eig, EigenDecomposition, JACOBI_MAX_SWEEPS, JACOBI_REL_TOL};
pub use matrix::{Matrix, SymMatrix};
pub use orth::{m_orthonormalize, RANK_DEFICIENT_REL_TOL};
pub use svd::{nullspace, rank, right_svd, singular_values, RightSvd, NULLSPACE_REL_TOL};

/// Rectangular matrix; columns frequently hold subspace bases.
pub type RectMatrix<T> = Matrix<T>;
