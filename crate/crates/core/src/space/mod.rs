//! Discrete Sobolev spaces on boxes: tensor bases, exact quadrature, form
//! assembly and constraint functionals.

mod assemble;
mod basis;
mod constraint;
mod domain;
mod multi_index;
mod quadrature;

pub use assemble::{
    assemble_gram, assemble_gram_with_operator, assemble_operator_form, assemble_terms, legendre_points, FormTerms,
    GramSet, Operator,
};
pub use basis::{eval_basis, BasisFamily, BasisSpec};
pub use constraint::{
    boundary_mass, build_subspace, constraint_vector, ConstraintFunctional, ConstraintKind, TraceOperator,
};
pub use domain::{BoundaryPart, BoundaryRegion, DomainBox, Face};
pub use multi_index::{enumerate_multi_indices, IndexMode, MultiIndex};
pub use quadrature::{gauss_legendre, gauss_legendre_on, periodic_rule, quadrature_rule, QuadratureRule};

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Coefficient vectors spanning `P_k ∩ span(basis)`.
///
/// For the Legendre family this is every tensor index with total degree
/// `<= k`; the Fourier family only contains the constants.
pub fn polynomial_subspace<T: Scalar>(spec: &BasisSpec<T>, k: usize) -> Matrix<T> {
    let n = spec.len();
    let cols: Vec<usize> = (0..n)
        .filter(|&flat| {
            let idx = spec.split_index(flat);
            match spec.family() {
                BasisFamily::Legendre => idx.iter().sum::<usize>() <= k,
                BasisFamily::Fourier => idx.iter().all(|&j| j == 0),
            }
        })
        .collect();
    Matrix::identity(n).select_columns(&cols)
}
