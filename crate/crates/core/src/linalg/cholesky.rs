use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, SymMatrix};
use crate::scalar::Scalar;

/// Pivots at or below this fraction of the largest diagonal entry are rejected.
pub const PIVOT_REL_TOL: f64 = 1e-14;

/// Lower-triangular Cholesky factor `L` with `L Lᵀ = m`.
pub fn cholesky<T: Scalar>(m: &SymMatrix<T>) -> Result<Matrix<T>> {
    let n = m.dim();
    let max_diag = m.diag().into_iter().fold(T::zero(), T::max);
    let floor = T::lit(PIVOT_REL_TOL) * max_diag;
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut pivot = m[(j, j)];
        for k in 0..j {
            pivot -= l[(j, k)] * l[(j, k)];
        }
        if !(pivot > floor) || max_diag <= T::zero() {
            return Err(Error::NotPositiveDefinite {
                index: j,
                pivot: pivot.to_f64_lossy(),
            });
        }
        let d = pivot.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Cholesky factor computed on `D m D` with `D = diag(m)^{-1/2}` and scaled
/// back, so that the pivot test does not depend on the scaling of individual
/// coordinates. Still satisfies `L Lᵀ = m`.
pub fn scaled_cholesky<T: Scalar>(m: &SymMatrix<T>) -> Result<Matrix<T>> {
    let n = m.dim();
    let mut d = Vec::with_capacity(n);
    for (i, mii) in m.diag().into_iter().enumerate() {
        if !(mii > T::zero()) {
            return Err(Error::NotPositiveDefinite {
                index: i,
                pivot: mii.to_f64_lossy(),
            });
        }
        d.push(mii.sqrt());
    }
    let scaled = SymMatrix::symmetrized(Matrix::from_fn(n, n, |i, j| m[(i, j)] / (d[i] * d[j])));
    let mut l = cholesky(&scaled)?;
    for i in 0..n {
        for j in 0..=i {
            l[(i, j)] *= d[i];
        }
    }
    Ok(l)
}

/// Solves `L X = B` for lower-triangular `L`.
pub fn solve_lower<T: Scalar>(l: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = l.rows();
    let mut x = b.clone();
    for c in 0..b.cols() {
        for i in 0..n {
            let mut s = x[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// Solves `Lᵀ X = B` for lower-triangular `L`.
pub fn solve_lower_transpose<T: Scalar>(l: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = l.rows();
    let mut x = b.clone();
    for c in 0..b.cols() {
        for i in (0..n).rev() {
            let mut s = x[(i, c)];
            for k in (i + 1)..n {
                s -= l[(k, i)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}
