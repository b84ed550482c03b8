//! One-sided (Hestenes) Jacobi SVD, singular values and numerical nullspaces.

use crate::linalg::matrix::{dot, Matrix};
use crate::scalar::Scalar;

/// Sweep budget for the one-sided iteration. Convergence is quadratic, so
/// this is never reached for matrices of desk-scale size.
const SVD_MAX_SWEEPS: usize = 60;

/// Default relative tolerance for numerical nullspaces.
pub const NULLSPACE_REL_TOL: f64 = 1e-10;

/// Singular values paired with right singular vectors (columns of `v`),
/// sorted by descending singular value. One value per column of the input.
#[derive(Debug, Clone)]
pub struct RightSvd<T> {
    pub values: Vec<T>,
    pub v: Matrix<T>,
}

/// Orthogonalizes the columns of `b` by plane rotations; the accumulated
/// rotations are the right singular vectors.
pub fn right_svd<T: Scalar>(b: &Matrix<T>) -> RightSvd<T> {
    let (rows, cols) = (b.rows(), b.cols());
    let mut u: Vec<Vec<T>> = (0..cols).map(|j| b.column(j)).collect();
    let mut v: Vec<Vec<T>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let tol = T::epsilon() * T::from_count(rows.max(1)).sqrt();

    for _ in 0..SVD_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha = dot(&u[p], &u[p]);
                let beta = dot(&u[q], &u[q]);
                let gamma = dot(&u[p], &u[q]);
                if gamma == T::zero() || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = {
                    let t = T::one() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                    if zeta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut u, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = u.iter().map(|c| dot(c, c).sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| norms[i]).collect();
    let cols_sorted: Vec<Vec<T>> = order.iter().map(|&i| v[i].clone()).collect();
    let v = Matrix::from_columns(cols, &cols_sorted).expect("square rotation accumulator");
    RightSvd { values, v }
}

fn rotate<T: Scalar>(cols: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    let (head, tail) = cols.split_at_mut(q);
    let (cp, cq) = (&mut head[p], &mut tail[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let g = *x;
        let h = *y;
        *x = c * g - s * h;
        *y = s * g + c * h;
    }
}

/// Singular values in descending order, `min(rows, cols)` of them.
pub fn singular_values<T: Scalar>(b: &Matrix<T>) -> Vec<T> {
    if b.cols() == 0 || b.rows() == 0 {
        return Vec::new();
    }
    // Rotating the shorter side keeps the count at min(rows, cols).
    let work = if b.cols() > b.rows() { b.transpose() } else { b.clone() };
    right_svd(&work).values
}

/// Orthonormal basis of the right singular directions with
/// `σ <= tol * σ_max` (every direction when `σ_max = 0`).
pub fn nullspace<T: Scalar>(b: &Matrix<T>, tol: T) -> Matrix<T> {
    let cols = b.cols();
    if cols == 0 {
        return Matrix::zeros(0, 0);
    }
    if b.rows() == 0 {
        return Matrix::identity(cols);
    }
    let svd = right_svd(b);
    let sigma_max = svd.values[0];
    let keep: Vec<usize> = (0..cols)
        .filter(|&j| sigma_max == T::zero() || svd.values[j] <= tol * sigma_max)
        .collect();
    svd.v.select_columns(&keep)
}

/// Numerical rank with respect to `tol * σ_max`.
pub fn rank<T: Scalar>(b: &Matrix<T>, tol: T) -> usize {
    let sv = singular_values(b);
    match sv.first() {
        None => 0,
        Some(&s0) if s0 == T::zero() => 0,
        Some(&s0) => sv.iter().filter(|&&s| s > tol * s0).count(),
    }
}
