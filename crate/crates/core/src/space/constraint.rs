//! Linear functionals that carve subspaces out of a discrete space.

use crate::coercivity::Subspace;
use crate::error::{Error, Result};
use crate::linalg::{m_orthonormalize, nullspace, Matrix, SymMatrix, NULLSPACE_REL_TOL};
use crate::scalar::Scalar;
use crate::space::assemble::{axis_rule, GramSet};
use crate::space::basis::{BasisFamily, BasisSpec};
use crate::space::domain::{BoundaryPart, BoundaryRegion, DomainBox, Face};
use crate::space::multi_index::MultiIndex;
use crate::space::quadrature::gauss_legendre_on;

/// Which trace a [`ConstraintKind::TraceCoefficient`] constrains on a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOperator {
    /// `∂^r v / ∂ν^r`; `r = 0` is the plain trace.
    NormalDerivative(usize),
    /// `Δv`
    Laplacian,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintKind<T> {
    /// `∫_Ω v dx`
    MeanValue,
    /// `∫_Ω D^s v dx`
    DomainIntegralOfDerivative(MultiIndex),
    /// `∫_Γ v ds`; in one dimension the sum of endpoint values.
    BoundaryIntegral(BoundaryRegion<T>),
    /// `v(p)`
    PointValue(Vec<T>),
    /// Coefficients of the trace expanded in the Legendre basis of each face
    /// part, one row per face coefficient.
    TraceCoefficient {
        region: BoundaryRegion<T>,
        trace: TraceOperator,
    },
    /// `∂^r_{x_axis} v` equal on the two faces normal to `axis`, for `r < orders`.
    PeriodicMatch { axis: usize, orders: usize },
}

/// A functional (or a block of functionals) as coefficient-space rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintFunctional<T> {
    pub kind: ConstraintKind<T>,
    pub rows: Matrix<T>,
}

/// Number of Gauss points used on partial faces of a Fourier basis, where no
/// finite rule is exact.
fn fourier_partial_points(modes: usize) -> usize {
    4 * modes + 40
}

/// 1D rule over `(a, b)` along `axis`, exact for products of two basis
/// functions when the range is a whole period.
fn range_rule<T: Scalar>(spec: &BasisSpec<T>, axis: usize, (a, b): (T, T), order: usize) -> (Vec<T>, Vec<T>) {
    let (lo, hi) = spec.domain().interval(axis);
    match spec.family() {
        BasisFamily::Legendre => gauss_legendre_on(a, b, spec.degrees()[axis] + order + 2),
        BasisFamily::Fourier if a == lo && b == hi => axis_rule(spec, axis, order),
        BasisFamily::Fourier => gauss_legendre_on(a, b, fourier_partial_points(spec.degrees()[axis])),
    }
}

/// `∫_a^b φ_j^{(r)} dx` along one axis for every 1D function `j`.
fn axis_integrals<T: Scalar>(spec: &BasisSpec<T>, axis: usize, r: usize, range: (T, T)) -> Vec<T> {
    let (x, w) = range_rule(spec, axis, range, r);
    let mut out = vec![T::zero(); spec.axis_len(axis)];
    for (&xi, &wi) in x.iter().zip(&w) {
        for (o, v) in out.iter_mut().zip(spec.eval_axis(axis, r, xi)) {
            *o += wi * v;
        }
    }
    out
}

/// Row `j ↦ Π_k f_k(idx_k(j))` for per-axis factor vectors.
fn tensor_row<T: Scalar>(spec: &BasisSpec<T>, factors: &[Vec<T>]) -> Vec<T> {
    (0..spec.len())
        .map(|flat| {
            spec.split_index(flat)
                .iter()
                .enumerate()
                .fold(T::one(), |acc, (k, &j)| acc * factors[k][j])
        })
        .collect()
}

fn domain_integral_row<T: Scalar>(spec: &BasisSpec<T>, s: &MultiIndex) -> Result<Vec<T>> {
    spec.check_derivative(s)?;
    let factors: Vec<Vec<T>> = (0..spec.dim())
        .map(|k| axis_integrals(spec, k, s[k], spec.domain().interval(k)))
        .collect();
    Ok(tensor_row(spec, &factors))
}

fn boundary_integral_row<T: Scalar>(spec: &BasisSpec<T>, region: &BoundaryRegion<T>) -> Result<Vec<T>> {
    region.validate(spec.domain())?;
    let mut row = vec![T::zero(); spec.len()];
    for part in region.parts() {
        let axis = part.face.axis();
        let c = part.face.coordinate(spec.domain());
        let ranges = BoundaryRegion::tangential_ranges(part, spec.domain());
        let mut factors: Vec<Vec<T>> = vec![Vec::new(); spec.dim()];
        factors[axis] = spec.eval_axis(axis, 0, c);
        for (k, range) in ranges {
            factors[k] = axis_integrals(spec, k, 0, range);
        }
        for (r, v) in row.iter_mut().zip(tensor_row(spec, &factors)) {
            *r += v;
        }
    }
    Ok(row)
}

/// Boundary mass form `∫_Γ u v ds` (sum of endpoint products in one dimension).
pub fn boundary_mass<T: Scalar>(spec: &BasisSpec<T>, region: &BoundaryRegion<T>) -> Result<SymMatrix<T>> {
    region.validate(spec.domain())?;
    let n = spec.len();
    let idx: Vec<Vec<usize>> = (0..n).map(|f| spec.split_index(f)).collect();
    let mut out = Matrix::zeros(n, n);
    for part in region.parts() {
        let axis = part.face.axis();
        let c = part.face.coordinate(spec.domain());
        let mut factors: Vec<Matrix<T>> = vec![Matrix::zeros(0, 0); spec.dim()];
        let vals = spec.eval_axis(axis, 0, c);
        factors[axis] = Matrix::from_fn(vals.len(), vals.len(), |a, b| vals[a] * vals[b]);
        for (k, range) in BoundaryRegion::tangential_ranges(part, spec.domain()) {
            let (x, w) = range_rule(spec, k, range, 0);
            let len = spec.axis_len(k);
            let mut m = Matrix::zeros(len, len);
            for (&xi, &wi) in x.iter().zip(&w) {
                let f = spec.eval_axis(k, 0, xi);
                for a in 0..len {
                    for b in 0..len {
                        m[(a, b)] += wi * f[a] * f[b];
                    }
                }
            }
            factors[k] = m;
        }
        for i in 0..n {
            for j in 0..n {
                let mut v = T::one();
                for (k, f) in factors.iter().enumerate() {
                    v *= f[(idx[i][k], idx[j][k])];
                }
                out[(i, j)] += v;
            }
        }
    }
    Ok(SymMatrix::symmetrized(out))
}

/// Rows expanding `(Σ_t c_t D^{s_t} v)|_part` in the Legendre basis of the part.
fn face_expansion_rows<T: Scalar>(
    spec: &BasisSpec<T>,
    part: &BoundaryPart<T>,
    terms: &[(T, MultiIndex)],
) -> Result<Matrix<T>> {
    let d = spec.dim();
    let axis = part.face.axis();
    let c = part.face.coordinate(spec.domain());
    let ranges = BoundaryRegion::tangential_ranges(part, spec.domain());
    for (_, s) in terms {
        spec.check_derivative(s)?;
    }
    // Face basis: Legendre of degree p_k on each tangential range.
    let face_lens: Vec<usize> = ranges.iter().map(|&(k, _)| spec.degrees()[k] + 1).collect();
    let n_face: usize = face_lens.iter().product();
    let mut rows = Matrix::zeros(n_face, spec.len());

    for (coef, s) in terms {
        // projection[k][f][j] = ∫ φ_j^{(s_k)} ψ_f / ∫ ψ_f² on the tangential range.
        let mut per_axis: Vec<Matrix<T>> = vec![Matrix::zeros(0, 0); d];
        let normal_vals = spec.eval_axis(axis, s[axis], c);
        per_axis[axis] = Matrix::from_rows(&[normal_vals]).expect("single row");
        for (slot, &(k, (a, b))) in ranges.iter().enumerate() {
            let p = face_lens[slot] - 1;
            let face = BasisSpec::legendre(DomainBox::new(vec![(a, b)])?, p)?;
            let (x, w) = gauss_legendre_on(a, b, spec.degrees()[k] + p + 2);
            let len = spec.axis_len(k);
            let mut proj = Matrix::zeros(p + 1, len);
            let mut norms = vec![T::zero(); p + 1];
            for (&xi, &wi) in x.iter().zip(&w) {
                let psi = face.eval_axis(0, 0, xi);
                let phi = spec.eval_axis(k, s[k], xi);
                for f in 0..=p {
                    norms[f] += wi * psi[f] * psi[f];
                    for j in 0..len {
                        proj[(f, j)] += wi * psi[f] * phi[j];
                    }
                }
            }
            for f in 0..=p {
                for j in 0..len {
                    proj[(f, j)] /= norms[f];
                }
            }
            per_axis[k] = proj;
        }
        for frow in 0..n_face {
            // split face row index across tangential axes, last fastest
            let mut rem = frow;
            let mut fidx = vec![0; ranges.len()];
            for slot in (0..ranges.len()).rev() {
                fidx[slot] = rem % face_lens[slot];
                rem /= face_lens[slot];
            }
            for j in 0..spec.len() {
                let jidx = spec.split_index(j);
                let mut v = *coef * per_axis[axis][(0, jidx[axis])];
                for (slot, &(k, _)) in ranges.iter().enumerate() {
                    v *= per_axis[k][(fidx[slot], jidx[k])];
                }
                rows[(frow, j)] += v;
            }
        }
    }
    Ok(rows)
}

fn trace_terms<T: Scalar>(d: usize, axis: usize, trace: TraceOperator) -> Vec<(T, MultiIndex)> {
    match trace {
        TraceOperator::NormalDerivative(r) => vec![(T::one(), MultiIndex::axis(d, axis, r))],
        TraceOperator::Laplacian => (0..d).map(|k| (T::one(), MultiIndex::axis(d, k, 2))).collect(),
    }
}

/// Realizes a functional on the basis of `spec`.
pub fn constraint_vector<T: Scalar>(spec: &BasisSpec<T>, kind: ConstraintKind<T>) -> Result<ConstraintFunctional<T>> {
    let d = spec.dim();
    let rows = match &kind {
        ConstraintKind::MeanValue => Matrix::from_rows(&[domain_integral_row(spec, &MultiIndex::zero(d))?])?,
        ConstraintKind::DomainIntegralOfDerivative(s) => Matrix::from_rows(&[domain_integral_row(spec, s)?])?,
        ConstraintKind::BoundaryIntegral(region) => {
            let row = boundary_integral_row(spec, region)?;
            if !(region.measure(spec.domain()) > T::zero()) {
                return Err(Error::ZeroMeasureRegion);
            }
            Matrix::from_rows(&[row])?
        }
        ConstraintKind::PointValue(p) => {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                });
            }
            if !spec.domain().contains_closed(p) {
                return Err(Error::HypothesisViolated(format!(
                    "point {p:?} lies outside the closed domain"
                )));
            }
            Matrix::from_rows(&[spec.eval_point(&MultiIndex::zero(d), p)?])?
        }
        ConstraintKind::TraceCoefficient { region, trace } => {
            if spec.family() == BasisFamily::Fourier {
                return Err(Error::UnsupportedForBasis(
                    "trace coefficients are defined for the Legendre family only".into(),
                ));
            }
            region.validate(spec.domain())?;
            let mut rows = Matrix::zeros(0, spec.len());
            for part in region.parts() {
                let terms = trace_terms(d, part.face.axis(), *trace);
                rows = rows.vstack(&face_expansion_rows(spec, part, &terms)?)?;
            }
            rows
        }
        ConstraintKind::PeriodicMatch { axis, orders } => {
            if spec.family() == BasisFamily::Fourier {
                return Err(Error::UnsupportedForBasis(
                    "periodic matching is implied by the Fourier family".into(),
                ));
            }
            if *axis >= d {
                return Err(Error::InvalidInput(format!("axis {axis} out of range")));
            }
            let lo = BoundaryPart {
                face: Face(2 * axis),
                fraction: (T::zero(), T::one()),
            };
            let hi = BoundaryPart {
                face: Face(2 * axis + 1),
                fraction: (T::zero(), T::one()),
            };
            let mut rows = Matrix::zeros(0, spec.len());
            for r in 0..*orders {
                let terms = vec![(T::one(), MultiIndex::axis(d, *axis, r))];
                let diff = face_expansion_rows(spec, &lo, &terms)?.sub(&face_expansion_rows(spec, &hi, &terms)?)?;
                rows = rows.vstack(&diff)?;
            }
            rows
        }
    };
    Ok(ConstraintFunctional { kind, rows })
}

/// Joint nullspace of all constraint rows, orthonormal in the full Gram metric.
///
/// Rows are normalized before the rank decision so that functionals of very
/// different magnitude are weighted equally.
pub fn build_subspace<T: Scalar>(gram: &GramSet<T>, constraints: &[ConstraintFunctional<T>]) -> Result<Subspace<T>> {
    let n = gram.full.dim();
    let mut stacked = Matrix::zeros(0, n);
    for c in constraints {
        if c.rows.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.rows.cols(),
            });
        }
        stacked = stacked.vstack(&c.rows)?;
    }
    let kept: Vec<Vec<T>> = (0..stacked.rows())
        .filter_map(|i| {
            let r = stacked.row(i);
            let norm = r.iter().map(|&x| x * x).sum::<T>().sqrt();
            (norm > T::zero()).then(|| r.iter().map(|&x| x / norm).collect())
        })
        .collect();
    let basis = if kept.is_empty() {
        Matrix::identity(n)
    } else {
        nullspace(&Matrix::from_rows(&kept)?, T::lit(NULLSPACE_REL_TOL))
    };
    if basis.cols() == 0 {
        return Ok(Subspace::trivial(gram.full.clone()));
    }
    let q = m_orthonormalize(&basis, &gram.full)?;
    Subspace::new(q, gram.full.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::assemble::assemble_gram;

    fn line(lo: f64, hi: f64) -> DomainBox<f64> {
        DomainBox::new(vec![(lo, hi)]).unwrap()
    }

    #[test]
    fn mean_value_row() {
        let spec = BasisSpec::legendre(line(-1.0, 1.0), 1).unwrap();
        let c = constraint_vector(&spec, ConstraintKind::MeanValue).unwrap();
        assert!((c.rows[(0, 0)] - 2.0).abs() < 1e-15);
        assert!(c.rows[(0, 1)].abs() < 1e-15);
    }

    #[test]
    fn point_value_row() {
        let spec = BasisSpec::legendre(line(-1.0, 1.0), 2).unwrap();
        let c = constraint_vector(&spec, ConstraintKind::PointValue(vec![0.0])).unwrap();
        assert_eq!(c.rows.row(0), &[1.0, 0.0, -0.5]);
    }

    #[test]
    fn point_outside_domain_is_a_hypothesis_failure() {
        let spec = BasisSpec::legendre(line(0.0, 1.0), 2).unwrap();
        let r = constraint_vector(&spec, ConstraintKind::PointValue(vec![1.5]));
        assert!(matches!(r, Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn trace_rows_per_face() {
        let spec = BasisSpec::legendre(DomainBox::<f64>::unit(2).unwrap(), 4).unwrap();
        let c = constraint_vector(
            &spec,
            ConstraintKind::TraceCoefficient {
                region: BoundaryRegion::face(Face(0)),
                trace: TraceOperator::NormalDerivative(0),
            },
        )
        .unwrap();
        assert_eq!(c.rows.rows(), 5);
    }

    #[test]
    fn fourier_rejects_periodic_match_and_traces() {
        let spec = BasisSpec::fourier(DomainBox::<f64>::unit(2).unwrap(), 2).unwrap();
        let r = constraint_vector(&spec, ConstraintKind::PeriodicMatch { axis: 0, orders: 2 });
        assert!(matches!(r, Err(Error::UnsupportedForBasis(_))));
    }

    #[test]
    fn zero_measure_boundary() {
        let spec = BasisSpec::legendre(DomainBox::<f64>::unit(2).unwrap(), 2).unwrap();
        let r = constraint_vector(
            &spec,
            ConstraintKind::BoundaryIntegral(BoundaryRegion::face_fraction(Face(0), 0.5, 0.5)),
        );
        assert_eq!(r, Err(Error::ZeroMeasureRegion));
    }

    #[test]
    fn subspace_dimensions() {
        let spec = BasisSpec::legendre(line(0.0, 1.0), 4).unwrap();
        let g = assemble_gram(&spec, 1).unwrap();
        assert_eq!(build_subspace(&g, &[]).unwrap().dim(), 5);

        let spec1 = BasisSpec::legendre(line(-1.0, 1.0), 1).unwrap();
        let g1 = assemble_gram(&spec1, 1).unwrap();
        let mean = constraint_vector(&spec1, ConstraintKind::MeanValue).unwrap();
        assert_eq!(build_subspace(&g1, &[mean]).unwrap().dim(), 1);

        let spec3 = BasisSpec::legendre(line(0.0, 1.0), 3).unwrap();
        let g3 = assemble_gram(&spec3, 2).unwrap();
        let p0 = constraint_vector(&spec3, ConstraintKind::PointValue(vec![0.0])).unwrap();
        let p1 = constraint_vector(&spec3, ConstraintKind::PointValue(vec![1.0])).unwrap();
        assert_eq!(build_subspace(&g3, &[p0, p1]).unwrap().dim(), 2);
    }

    #[test]
    fn periodic_match_on_legendre() {
        // v(0) = v(1) and v'(0) = v'(1) remove two directions in 1D.
        let spec = BasisSpec::legendre(line(0.0, 1.0), 6).unwrap();
        let g = assemble_gram(&spec, 2).unwrap();
        let c = constraint_vector(&spec, ConstraintKind::PeriodicMatch { axis: 0, orders: 2 }).unwrap();
        assert_eq!(c.rows.rows(), 2);
        assert_eq!(build_subspace(&g, &[c]).unwrap().dim(), 5);
    }
}
