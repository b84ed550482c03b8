use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::space::domain::DomainBox;
use crate::space::multi_index::MultiIndex;

/// One-dimensional function family used along every axis of a tensor basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFamily {
    /// Legendre polynomials `P_0 … P_p` affinely mapped to the interval.
    Legendre,
    /// Real trigonometric functions `1, cos(ω_k t), sin(ω_k t)` for
    /// `k = 1 … K`, `ω_k = 2πk / L`. Every element is periodic on the box.
    Fourier,
}

/// Tensor-product basis on a box.
///
/// Per axis the Legendre family has `p + 1` functions and the Fourier family
/// `2K + 1`, ordered `1, cos_1, sin_1, cos_2, sin_2, …`. Flat indices run
/// with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSpec<T> {
    family: BasisFamily,
    degrees: Vec<usize>,
    domain: DomainBox<T>,
}

impl<T: Scalar> BasisSpec<T> {
    pub fn new(family: BasisFamily, degrees: Vec<usize>, domain: DomainBox<T>) -> Result<Self> {
        if degrees.len() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                found: degrees.len(),
            });
        }
        if family == BasisFamily::Fourier && degrees.contains(&0) {
            return Err(Error::InvalidInput("Fourier mode cutoff must be >= 1".into()));
        }
        Ok(Self {
            family,
            degrees,
            domain,
        })
    }

    /// Same Legendre degree along every axis.
    pub fn legendre(domain: DomainBox<T>, degree: usize) -> Result<Self> {
        let d = domain.dim();
        Self::new(BasisFamily::Legendre, vec![degree; d], domain)
    }

    /// Same Fourier mode cutoff along every axis.
    pub fn fourier(domain: DomainBox<T>, modes: usize) -> Result<Self> {
        let d = domain.dim();
        Self::new(BasisFamily::Fourier, vec![modes; d], domain)
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn domain(&self) -> &DomainBox<T> {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Same family and box with a different per-axis degree.
    pub fn with_degree(&self, degree: usize) -> Result<Self> {
        Self::new(self.family, vec![degree; self.dim()], self.domain.clone())
    }

    /// Number of 1D functions along `axis`.
    pub fn axis_len(&self, axis: usize) -> usize {
        match self.family {
            BasisFamily::Legendre => self.degrees[axis] + 1,
            BasisFamily::Fourier => 2 * self.degrees[axis] + 1,
        }
    }

    /// Dimension of the coefficient space.
    pub fn len(&self) -> usize {
        (0..self.dim()).map(|k| self.axis_len(k)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-axis indices of a flat basis index.
    pub fn split_index(&self, mut flat: usize) -> Vec<usize> {
        let d = self.dim();
        let mut idx = vec![0; d];
        for k in (0..d).rev() {
            let n = self.axis_len(k);
            idx[k] = flat % n;
            flat /= n;
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter()
            .enumerate()
            .fold(0, |acc, (k, &i)| acc * self.axis_len(k) + i)
    }

    /// Polynomial degree of 1D function `j` (Legendre), or its frequency
    /// number (Fourier).
    pub fn axis_function_degree(&self, j: usize) -> usize {
        match self.family {
            BasisFamily::Legendre => j,
            BasisFamily::Fourier => j.div_ceil(2),
        }
    }

    pub(crate) fn check_derivative(&self, s: &MultiIndex) -> Result<()> {
        if s.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.dim(),
            });
        }
        if self.family == BasisFamily::Legendre {
            for (k, &order) in s.components().iter().enumerate() {
                if order > self.degrees[k] + 1 {
                    return Err(Error::UnsupportedDerivative {
                        order,
                        degree: self.degrees[k],
                    });
                }
            }
        }
        Ok(())
    }

    /// Values of the `order`-th derivative of every 1D function along `axis` at `x`.
    pub fn eval_axis(&self, axis: usize, order: usize, x: T) -> Vec<T> {
        let (lo, hi) = self.domain.interval(axis);
        match self.family {
            BasisFamily::Legendre => legendre_derivatives(self.degrees[axis], order, lo, hi, x),
            BasisFamily::Fourier => fourier_derivatives(self.degrees[axis], order, lo, hi, x),
        }
    }

    /// Value of `D^s φ_j` at one point for every basis function `j`.
    pub fn eval_point(&self, s: &MultiIndex, point: &[T]) -> Result<Vec<T>> {
        self.check_derivative(s)?;
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: point.len(),
            });
        }
        let per_axis: Vec<Vec<T>> = (0..self.dim()).map(|k| self.eval_axis(k, s[k], point[k])).collect();
        Ok((0..self.len())
            .map(|flat| {
                self.split_index(flat)
                    .iter()
                    .enumerate()
                    .fold(T::one(), |acc, (k, &j)| acc * per_axis[k][j])
            })
            .collect())
    }
}

/// Matrix of `D^s φ_j` evaluated at `points` (one row per point).
pub fn eval_basis<T: Scalar>(spec: &BasisSpec<T>, s: &MultiIndex, points: &[Vec<T>]) -> Result<Matrix<T>> {
    let mut out = Matrix::zeros(points.len(), spec.len());
    for (i, p) in points.iter().enumerate() {
        let row = spec.eval_point(s, p)?;
        for (j, v) in row.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    Ok(out)
}

/// `d^r/dx^r P_j((2x - lo - hi)/(hi - lo))` for `j = 0 … p`.
///
/// Uses the differentiated three-term recurrence
/// `(j+1) P_{j+1}^{(r)} = (2j+1)(ξ P_j^{(r)} + r P_j^{(r-1)}) - j P_{j-1}^{(r)}`.
fn legendre_derivatives<T: Scalar>(p: usize, order: usize, lo: T, hi: T, x: T) -> Vec<T> {
    let h = hi - lo;
    let xi = (x + x - lo - hi) / h;
    // table[r][j]
    let mut prev: Vec<T> = vec![T::zero(); p + 1];
    let mut cur: Vec<T> = vec![T::zero(); p + 1];
    for r in 0..=order {
        let rf = T::from_count(r);
        for j in 0..=p {
            cur[j] = if j == 0 {
                if r == 0 {
                    T::one()
                } else {
                    T::zero()
                }
            } else if j == 1 {
                match r {
                    0 => xi,
                    1 => T::one(),
                    _ => T::zero(),
                }
            } else {
                let jm = j - 1;
                let jf = T::from_count(jm);
                let two_j1 = T::from_count(2 * jm + 1);
                let lower = if r == 0 { T::zero() } else { prev[jm] };
                (two_j1 * (xi * cur[jm] + rf * lower) - jf * cur[jm - 1]) / T::from_count(jm + 1)
            };
        }
        if r < order {
            std::mem::swap(&mut prev, &mut cur);
        }
    }
    let chain = (T::lit(2.0) / h).powi(order as i32);
    cur.into_iter().map(|v| v * chain).collect()
}

fn fourier_derivatives<T: Scalar>(k_max: usize, order: usize, lo: T, hi: T, x: T) -> Vec<T> {
    let len = hi - lo;
    let t = x - lo;
    let mut out = Vec::with_capacity(2 * k_max + 1);
    out.push(if order == 0 { T::one() } else { T::zero() });
    for k in 1..=k_max {
        let omega = T::lit(2.0) * T::pi() * T::from_count(k) / len;
        let theta = omega * t;
        let (s, c) = theta.sin_cos();
        let factor = omega.powi(order as i32);
        let (dc, ds) = match order % 4 {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        };
        out.push(factor * dc);
        out.push(factor * ds);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(lo: f64, hi: f64) -> DomainBox<f64> {
        DomainBox::new(vec![(lo, hi)]).unwrap()
    }

    #[test]
    fn legendre_degree_one_values() {
        let spec = BasisSpec::legendre(line(-1.0, 1.0), 1).unwrap();
        let m = eval_basis(&spec, &MultiIndex::new(vec![0]), &[vec![0.0]]).unwrap();
        assert_eq!(m.row(0), &[1.0, 0.0]);
    }

    #[test]
    fn legendre_second_derivative_of_p2() {
        let spec = BasisSpec::legendre(line(-1.0, 1.0), 2).unwrap();
        for x in [-0.7, 0.0, 0.4] {
            let v = spec.eval_point(&MultiIndex::new(vec![2]), &[x]).unwrap();
            assert!((v[2] - 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn fourier_sine_derivative() {
        let spec = BasisSpec::fourier(line(0.0, 1.0), 1).unwrap();
        let v = spec.eval_point(&MultiIndex::new(vec![1]), &[0.0]).unwrap();
        assert!((v[2] - 2.0 * std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn legendre_derivatives_match_finite_differences() {
        let spec = BasisSpec::legendre(line(0.5, 2.0), 7).unwrap();
        let h = 1e-5;
        for r in 0..4 {
            for &x in &[0.6, 1.1, 1.9] {
                let d = spec.eval_axis(0, r + 1, x);
                let fp = spec.eval_axis(0, r, x + h);
                let fm = spec.eval_axis(0, r, x - h);
                for j in 0..=7 {
                    let fd = (fp[j] - fm[j]) / (2.0 * h);
                    assert!((fd - d[j]).abs() <= 1e-5 * (1.0 + d[j].abs()), "r={r} j={j}");
                }
            }
        }
    }

    #[test]
    fn legendre_endpoint_values() {
        let spec = BasisSpec::legendre(line(-1.0, 1.0), 6).unwrap();
        let at_one = spec.eval_axis(0, 0, 1.0);
        assert!(at_one.iter().all(|&v| (v - 1.0).abs() < 1e-14));
        // P_j'(1) = j(j+1)/2
        let d1 = spec.eval_axis(0, 1, 1.0);
        for (j, v) in d1.iter().enumerate() {
            assert!((v - (j * (j + 1)) as f64 / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unsupported_derivative_is_reported() {
        let spec = BasisSpec::legendre(line(0.0, 1.0), 2).unwrap();
        let r = spec.eval_point(&MultiIndex::new(vec![4]), &[0.5]);
        assert!(matches!(r, Err(Error::UnsupportedDerivative { order: 4, degree: 2 })));
        assert!(spec.eval_point(&MultiIndex::new(vec![3]), &[0.5]).is_ok());
    }

    #[test]
    fn flat_index_roundtrip() {
        let spec = BasisSpec::legendre(DomainBox::<f64>::unit(3).unwrap(), 3).unwrap();
        for flat in 0..spec.len() {
            assert_eq!(spec.flat_index(&spec.split_index(flat)), flat);
        }
    }
}
