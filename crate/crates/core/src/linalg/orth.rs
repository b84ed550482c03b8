use crate::error::{Error, Result};
use crate::linalg::matrix::{dot, Matrix, SymMatrix};
use crate::scalar::Scalar;

/// Columns whose metric norm drops below this fraction of the original norm
/// during orthogonalization are rejected as dependent.
pub const RANK_DEFICIENT_REL_TOL: f64 = 1e-12;

/// Modified Gram–Schmidt in the `m` inner product with one full
/// re-orthogonalization pass. Output satisfies `Qᵀ m Q = I`.
pub fn m_orthonormalize<T: Scalar>(b: &Matrix<T>, m: &SymMatrix<T>) -> Result<Matrix<T>> {
    if b.rows() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: b.rows(),
        });
    }
    let n = b.rows();
    let mut q: Vec<Vec<T>> = Vec::with_capacity(b.cols());
    let mut mq: Vec<Vec<T>> = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let mut v = b.column(j);
        let norm0 = m.quadratic_form(&v).max(T::zero()).sqrt();
        for _pass in 0..2 {
            for (qi, mqi) in q.iter().zip(&mq) {
                let c = dot(mqi, &v);
                for (vk, &qk) in v.iter_mut().zip(qi) {
                    *vk -= c * qk;
                }
            }
        }
        let mv = m.as_matrix().matvec(&v)?;
        let norm = dot(&v, &mv).max(T::zero()).sqrt();
        if norm0 == T::zero() || norm <= T::lit(RANK_DEFICIENT_REL_TOL) * norm0 {
            return Err(Error::RankDeficient { column: j });
        }
        let inv = T::one() / norm;
        q.push(v.iter().map(|&x| x * inv).collect());
        mq.push(mv.iter().map(|&x| x * inv).collect());
    }
    Matrix::from_columns(n, &q)
}
