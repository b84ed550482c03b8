use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{m_orthonormalize, rank, scaled_cholesky, Matrix, SymMatrix, NULLSPACE_REL_TOL};
use crate::scalar::Scalar;

/// Subspace of coefficient space with a basis orthonormal in the ambient metric.
///
/// Zero columns represent `{0}`.
#[derive(Debug, Clone)]
pub struct Subspace<T> {
    basis: Matrix<T>,
    metric: Arc<SymMatrix<T>>,
}

/// Tolerance on `‖Bᵀ M B - I‖_max` accepted by [`Subspace::new`].
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

impl<T: Scalar> Subspace<T> {
    /// Wraps an already `metric`-orthonormal basis.
    pub fn new(basis: Matrix<T>, metric: Arc<SymMatrix<T>>) -> Result<Self> {
        if basis.rows() != metric.dim() {
            return Err(Error::DimensionMismatch {
                expected: metric.dim(),
                found: basis.rows(),
            });
        }
        if basis.cols() > basis.rows() {
            return Err(Error::InvalidInput(
                "more basis vectors than the ambient dimension".into(),
            ));
        }
        if basis.cols() > 0 {
            let gram = metric.congruence(&basis)?;
            let defect = gram.as_matrix().sub(&Matrix::identity(basis.cols()))?.max_abs();
            if defect > T::lit(ORTHONORMALITY_TOL) {
                return Err(Error::InvalidInput(format!(
                    "basis is not orthonormal in the metric (defect {:e})",
                    defect.to_f64_lossy()
                )));
            }
        }
        Ok(Self { basis, metric })
    }

    /// Orthonormalizes an arbitrary spanning set of linearly independent columns.
    pub fn from_spanning(columns: &Matrix<T>, metric: Arc<SymMatrix<T>>) -> Result<Self> {
        if columns.cols() == 0 {
            return Ok(Self::trivial(metric));
        }
        let q = m_orthonormalize(columns, &metric)?;
        Self::new(q, metric)
    }

    /// `{0}`
    pub fn trivial(metric: Arc<SymMatrix<T>>) -> Self {
        Self {
            basis: Matrix::zeros(metric.dim(), 0),
            metric,
        }
    }

    /// The whole ambient space.
    pub fn full(metric: Arc<SymMatrix<T>>) -> Result<Self> {
        Self::from_spanning(&Matrix::identity(metric.dim()), metric)
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn metric(&self) -> &Arc<SymMatrix<T>> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn same_metric(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.metric, &other.metric) || *self.metric == *other.metric
    }

    /// Coefficient vector `B c` of the element with basis coordinates `c`.
    pub fn element(&self, coords: &[T]) -> Vec<T> {
        self.basis
            .matvec(coords)
            .expect("coordinate length equals subspace dimension")
    }

    /// `‖x‖_M`
    pub fn norm(&self, x: &[T]) -> T {
        self.metric.quadratic_form(x).max(T::zero()).sqrt()
    }

    /// `M`-orthogonal projection of an ambient vector onto this subspace.
    pub fn project(&self, x: &[T]) -> Vec<T> {
        let mx = self.metric.as_matrix().matvec(x).expect("ambient dimension");
        let coords = self.basis.transpose().matvec(&mx).expect("ambient dimension");
        self.element(&coords)
    }

    /// Restriction `Bᵀ A B` of a form to this subspace.
    pub fn restrict(&self, a: &SymMatrix<T>) -> Result<SymMatrix<T>> {
        a.congruence(&self.basis)
    }

    /// Subspace spanned by this basis plus extra columns (re-orthonormalized).
    pub fn extended(&self, extra: &Matrix<T>) -> Result<Self> {
        Self::from_spanning(&self.basis.hstack(extra)?, self.metric.clone())
    }
}

/// `dim(V ∩ W)` from the numerical rank of the stacked bases.
///
/// Both bases are mapped by `Lᵀ` (with `M = L Lᵀ`) so that the stacked matrix
/// has orthonormal blocks in the Euclidean sense; the rank is decided at
/// relative tolerance `1e-10`.
pub fn intersection_dim<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> Result<usize> {
    if !v.same_metric(w) {
        return Err(Error::MetricMismatch);
    }
    if v.is_trivial() || w.is_trivial() {
        return Ok(0);
    }
    let l = scaled_cholesky(v.metric())?;
    let lt = l.transpose();
    let stacked = lt.matmul(&v.basis().hstack(w.basis())?)?;
    let r = rank(&stacked, T::lit(NULLSPACE_REL_TOL));
    Ok(v.dim() + w.dim() - r)
}
