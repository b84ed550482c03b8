//! Cyclic Jacobi eigensolver and the Cholesky-reduced generalized problem.

use crate::error::{Error, Result};
use crate::linalg::cholesky::{cholesky, solve_lower, solve_lower_transpose};
use crate::linalg::matrix::{Matrix, SymMatrix};
use crate::scalar::Scalar;

/// Sweep budget of the cyclic Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 30;
/// Convergence threshold on `off(A) / ‖A‖_F`.
pub const JACOBI_REL_TOL: f64 = 1e-13;

/// Eigenvalues in ascending order with eigenvectors stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

impl<T: Scalar> EigenDecomposition<T> {
    pub fn min_value(&self) -> Option<T> {
        self.values.first().copied()
    }

    pub fn max_value(&self) -> Option<T> {
        self.values.last().copied()
    }

    /// Largest eigenvalue magnitude, used as the scale for relative thresholds.
    pub fn scale(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }
}

fn off_diagonal_norm<T: Scalar>(a: &Matrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Symmetric eigendecomposition `m = Q diag(λ) Qᵀ` by cyclic Jacobi sweeps.
pub fn sym_eig<T: Scalar>(m: &SymMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let norm = a.frobenius_norm();
    let tol = T::lit(JACOBI_REL_TOL).max(T::lit(10.0) * T::epsilon()) * norm;

    let mut converged = off_diagonal_norm(&a) <= tol;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (apq + apq);
                let t = {
                    let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let g = a[(k, p)];
                    let h = a[(k, q)];
                    let kp = c * g - s * h;
                    let kq = s * g + c * h;
                    a[(k, p)] = kp;
                    a[(p, k)] = kp;
                    a[(k, q)] = kq;
                    a[(q, k)] = kq;
                }
                for k in 0..n {
                    let g = v[(k, p)];
                    let h = v[(k, q)];
                    v[(k, p)] = c * g - s * h;
                    v[(k, q)] = s * g + c * h;
                }
            }
        }
        converged = off_diagonal_norm(&a) <= tol;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            off_norm: off_diagonal_norm(&a).to_f64_lossy(),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = v.select_columns(&order);
    Ok(EigenDecomposition { values, vectors })
}

/// Generalized symmetric-definite problem `a x = λ m x`.
///
/// The pencil is first scaled by `diag(m)^{-1/2}` on both sides, then reduced
/// through the Cholesky factor of the scaled metric. Eigenvectors are
/// `m`-orthonormal.
pub fn gen_sym_eig<T: Scalar>(a: &SymMatrix<T>, m: &SymMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = m.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.dim(),
        });
    }
    let mut d = Vec::with_capacity(n);
    for (i, mii) in m.diag().into_iter().enumerate() {
        if !(mii > T::zero()) {
            return Err(Error::NotPositiveDefinite {
                index: i,
                pivot: mii.to_f64_lossy(),
            });
        }
        d.push(T::one() / mii.sqrt());
    }
    let scaled = |x: &SymMatrix<T>| SymMatrix::symmetrized(Matrix::from_fn(n, n, |i, j| d[i] * x[(i, j)] * d[j]));
    let a_s = scaled(a);
    let m_s = scaled(m);
    let l = cholesky(&m_s)?;
    // C = L⁻¹ A L⁻ᵀ
    let y = solve_lower(&l, a_s.as_matrix());
    let c = solve_lower(&l, &y.transpose());
    let eig = sym_eig(&SymMatrix::symmetrized(c))?;
    let mut x = solve_lower_transpose(&l, &eig.vectors);
    for i in 0..n {
        for j in 0..n {
            x[(i, j)] *= d[i];
        }
    }
    Ok(EigenDecomposition {
        values: eig.values,
        vectors: x,
    })
}
