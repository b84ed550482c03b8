use rand::Rng;
use rand_distr::StandardNormal;

use crate::coercivity::subspace::Subspace;
use crate::error::{Error, Result};
use crate::linalg::{gen_sym_eig, singular_values, Matrix, SymMatrix};
use crate::scalar::Scalar;
use std::sync::Arc;

/// Default relative eigenvalue threshold below which a direction belongs to a kernel.
pub const KERNEL_REL_TOL: f64 = 1e-10;
/// `γ_sharp` must exceed this fraction of the largest pencil eigenvalue to count as coercive.
pub const COERCIVITY_REL_THRESHOLD: f64 = 1e-8;
/// Subspaces with `α >= 1 - INTERSECTION_GAP` are treated as intersecting.
pub const INTERSECTION_GAP: f64 = 1e-10;
/// Slack allowed in `γ_sharp >= γ_perp β² - slack · max(1, γ_sharp)`.
pub const BOUND_SLACK: f64 = 1e-9;

/// Cosine and sine of the minimal angle between two subspaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleResult<T> {
    pub alpha: T,
    pub beta: T,
    /// `acos(alpha)` in radians.
    pub angle: T,
    pub intersecting: bool,
}

impl<T: Scalar> AngleResult<T> {
    fn from_alpha(alpha: T) -> Self {
        let alpha = alpha.max(T::zero()).min(T::one());
        let beta = ((T::one() - alpha) * (T::one() + alpha)).sqrt();
        Self {
            alpha,
            beta,
            angle: alpha.acos(),
            intersecting: alpha >= T::one() - T::lit(INTERSECTION_GAP),
        }
    }
}

/// `ker a` together with its `M`-orthogonal complement.
#[derive(Debug, Clone)]
pub struct KernelSplit<T> {
    pub kernel: Subspace<T>,
    pub complement: Subspace<T>,
    /// Generalized eigenvalues of `(a, M)`, ascending.
    pub eigenvalues: Vec<T>,
}

impl<T: Scalar> KernelSplit<T> {
    pub fn lambda_max(&self) -> T {
        self.eigenvalues.iter().fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }
}

fn check_metric<T: Scalar>(a: &SymMatrix<T>, metric: &SymMatrix<T>) -> Result<()> {
    if a.dim() != metric.dim() {
        return Err(Error::DimensionMismatch {
            expected: metric.dim(),
            found: a.dim(),
        });
    }
    Ok(())
}

/// Wraps generalized eigenvectors, re-orthonormalizing if roundoff left them
/// slightly outside [`Subspace::new`]'s tolerance.
fn subspace_of_columns<T: Scalar>(cols: Matrix<T>, metric: &Arc<SymMatrix<T>>) -> Result<Subspace<T>> {
    if cols.cols() == 0 {
        return Ok(Subspace::trivial(metric.clone()));
    }
    match Subspace::new(cols.clone(), metric.clone()) {
        Ok(s) => Ok(s),
        Err(_) => Subspace::from_spanning(&cols, metric.clone()),
    }
}

/// Splits coefficient space into `ker a` (generalized eigenvalues
/// `<= tol · λ_max`) and its `M`-orthogonal complement.
pub fn kernel_split<T: Scalar>(a: &SymMatrix<T>, metric: &Arc<SymMatrix<T>>, tol: T) -> Result<KernelSplit<T>> {
    check_metric(a, metric)?;
    let eig = gen_sym_eig(a, metric)?;
    let lmax = eig.scale();
    let cut = tol * lmax;
    if let Some(min) = eig.min_value() {
        if min < -cut {
            return Err(Error::NotSemidefinite {
                eigenvalue: min.to_f64_lossy(),
            });
        }
    }
    let k = eig.values.iter().take_while(|&&v| v <= cut).count();
    let n = eig.values.len();
    let kernel = subspace_of_columns(eig.vectors.select_columns(&(0..k).collect::<Vec<_>>()), metric)?;
    let complement = subspace_of_columns(eig.vectors.select_columns(&(k..n).collect::<Vec<_>>()), metric)?;
    Ok(KernelSplit {
        kernel,
        complement,
        eigenvalues: eig.values,
    })
}

/// `ker a = {v : a(v, v) = 0}` as an `M`-orthonormal subspace.
pub fn kernel_of_form<T: Scalar>(a: &SymMatrix<T>, metric: &Arc<SymMatrix<T>>, tol: T) -> Result<Subspace<T>> {
    kernel_split(a, metric, tol).map(|s| s.kernel)
}

/// `α(V, W) = sup (v, w) / (‖v‖ ‖w‖)`, the largest singular value of `Vᵀ M W`.
pub fn subspace_angle<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> Result<AngleResult<T>> {
    if !v.same_metric(w) {
        return Err(Error::MetricMismatch);
    }
    if v.is_trivial() || w.is_trivial() {
        return Ok(AngleResult::from_alpha(T::zero()));
    }
    let mw = v.metric().as_matrix().matmul(w.basis())?;
    let cross = v.basis().tr_matmul(&mw)?;
    let alpha = singular_values(&cross).first().copied().unwrap_or(T::zero());
    Ok(AngleResult::from_alpha(alpha))
}

/// Worst cases of the projection bounds over sampled unit vectors of `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionBounds<T> {
    pub angle: AngleResult<T>,
    /// `max ‖Pv‖ / ‖v‖`; never exceeds `alpha` in exact arithmetic.
    pub max_projection_ratio: T,
    /// `max β ‖v‖ / ‖(I - P) v‖`; never exceeds 1 in exact arithmetic.
    pub max_complement_ratio: T,
    /// `max (‖Pv‖ - α ‖v‖)`
    pub max_projection_excess: T,
    /// `max (β ‖v‖ - ‖(I - P) v‖)`
    pub max_complement_excess: T,
    /// `max |‖Pv‖² + ‖(I-P)v‖² - ‖v‖²| / ‖v‖²`
    pub max_pythagoras_defect: T,
    pub samples: usize,
}

/// Samples unit vectors of `V` and measures `‖Pv‖` and `‖(I - P) v‖`, with `P`
/// the `M`-orthogonal projection onto `W`.
pub fn projection_bounds_check<T: Scalar, R: Rng + ?Sized>(
    v: &Subspace<T>,
    w: &Subspace<T>,
    samples: usize,
    rng: &mut R,
) -> Result<ProjectionBounds<T>> {
    let angle = subspace_angle(v, w)?;
    if angle.intersecting {
        return Err(Error::IntersectingSubspaces {
            alpha: angle.alpha.to_f64_lossy(),
        });
    }
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be >= 1".into()));
    }
    let mut out = ProjectionBounds {
        angle,
        max_projection_ratio: T::zero(),
        max_complement_ratio: T::zero(),
        max_projection_excess: T::neg_infinity(),
        max_complement_excess: T::neg_infinity(),
        max_pythagoras_defect: T::zero(),
        samples,
    };
    if v.is_trivial() {
        out.max_projection_excess = T::zero();
        out.max_complement_excess = T::zero();
        return Ok(out);
    }
    for _ in 0..samples {
        let coords: Vec<T> = (0..v.dim())
            .map(|_| T::lit(rng.sample::<f64, _>(StandardNormal)))
            .collect();
        let x = v.element(&coords);
        let nx = v.norm(&x);
        if nx == T::zero() {
            continue;
        }
        let x: Vec<T> = x.iter().map(|&c| c / nx).collect();
        let px = w.project(&x);
        let rx: Vec<T> = x.iter().zip(&px).map(|(&a, &b)| a - b).collect();
        let np = w.norm(&px);
        let nr = w.norm(&rx);
        out.max_projection_ratio = out.max_projection_ratio.max(np);
        out.max_complement_ratio =
            out.max_complement_ratio
                .max(if nr > T::zero() { angle.beta / nr } else { T::infinity() });
        out.max_projection_excess = out.max_projection_excess.max(np - angle.alpha);
        out.max_complement_excess = out.max_complement_excess.max(angle.beta - nr);
        out.max_pythagoras_defect = out.max_pythagoras_defect.max((np * np + nr * nr - T::one()).abs());
    }
    Ok(out)
}

/// `inf_{v ∈ V} a(v, v) / ‖v‖²`.
pub fn sharp_coercivity<T: Scalar>(a: &SymMatrix<T>, metric: &SymMatrix<T>, v: &Subspace<T>) -> Result<T> {
    check_metric(a, metric)?;
    if **v.metric() != *metric {
        return Err(Error::MetricMismatch);
    }
    if v.is_trivial() {
        return Err(Error::TrivialSubspace);
    }
    let av = v.restrict(a)?;
    let mv = v.restrict(metric)?;
    let eig = gen_sym_eig(&av, &mv)?;
    Ok(eig.values[0])
}

/// Outcome of the subspace-angle coercivity criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct CoercivityReport<T> {
    /// Sharp constant of `a` on `V`.
    pub gamma_sharp: T,
    /// Sharp constant of `a` on `(ker a)^⊥`.
    pub gamma_perp: T,
    /// Angle between `V` and `ker a`.
    pub angle: AngleResult<T>,
    /// `γ_perp β²`
    pub bound: T,
    pub kernel_dim: usize,
    pub intersects_kernel: bool,
    /// `1e-8 · λ_max` of the pencil `(a, M)`.
    pub threshold: T,
    pub coercive: bool,
    /// `γ_sharp >= bound` up to slack; vacuously true when `V` meets the kernel.
    pub bound_holds: bool,
}

/// Sharp constant on `V` together with the lower bound `γ_perp β(V, ker a)²`.
pub fn coercivity_via_angle<T: Scalar>(
    a: &SymMatrix<T>,
    metric: &Arc<SymMatrix<T>>,
    v: &Subspace<T>,
    tol: T,
) -> Result<CoercivityReport<T>> {
    let split = kernel_split(a, metric, tol)?;
    let gamma_sharp = sharp_coercivity(a, metric, v)?;
    let gamma_perp = if split.complement.is_trivial() {
        T::zero()
    } else {
        sharp_coercivity(a, metric, &split.complement)?
    };
    let angle = subspace_angle(v, &split.kernel)?;
    let bound = gamma_perp * angle.beta * angle.beta;
    let threshold = T::lit(COERCIVITY_REL_THRESHOLD) * split.lambda_max();
    let slack = T::lit(BOUND_SLACK) * gamma_sharp.abs().max(T::one());
    Ok(CoercivityReport {
        gamma_sharp,
        gamma_perp,
        angle,
        bound,
        kernel_dim: split.kernel.dim(),
        intersects_kernel: angle.intersecting,
        threshold,
        coercive: gamma_sharp > threshold,
        bound_holds: angle.intersecting || gamma_sharp >= bound - slack,
    })
}

/// Result of checking that `a + b` is coercive on the whole space.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedReport<T> {
    /// Sharp constant of `a + b`.
    pub constant: T,
    pub kernel_dim: usize,
    /// Smallest generalized eigenvalue of `(b, M)`.
    pub b_min_eigenvalue: T,
    /// Smallest eigenvalue of `b` restricted to `ker a`; `None` for a trivial kernel.
    pub b_kernel_min: Option<T>,
    pub threshold: T,
    pub coercive: bool,
}

/// Checks that `b` is positive semi-definite and positive definite on `ker a`,
/// then returns the sharp coercivity constant of `a + b`.
pub fn augmented_coercivity<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    metric: &Arc<SymMatrix<T>>,
    tol: T,
) -> Result<AugmentedReport<T>> {
    check_metric(b, metric)?;
    let split = match kernel_split(a, metric, tol) {
        Err(Error::NotSemidefinite { eigenvalue }) => {
            return Err(Error::HypothesisViolated(format!(
                "a is not positive semi-definite (eigenvalue {eigenvalue:e})"
            )))
        }
        other => other?,
    };
    let b_eig = gen_sym_eig(b, metric)?;
    let b_scale = b_eig.scale();
    let b_min = b_eig.values[0];
    if b_min < -tol * b_scale {
        return Err(Error::HypothesisViolated(format!(
            "b is not positive semi-definite (eigenvalue {:e})",
            b_min.to_f64_lossy()
        )));
    }
    let b_kernel_min = if split.kernel.is_trivial() {
        None
    } else {
        let bk = split.kernel.restrict(b)?;
        let mk = split.kernel.restrict(metric)?;
        let min = gen_sym_eig(&bk, &mk)?.values[0];
        if !(min > tol * b_scale) {
            return Err(Error::HypothesisViolated(format!(
                "b is not positive definite on ker a (eigenvalue {:e})",
                min.to_f64_lossy()
            )));
        }
        Some(min)
    };
    let sum = a.add(b)?;
    let eig = gen_sym_eig(&sum, metric)?;
    let constant = eig.values[0];
    let threshold = T::lit(COERCIVITY_REL_THRESHOLD) * eig.scale();
    Ok(AugmentedReport {
        constant,
        kernel_dim: split.kernel.dim(),
        b_min_eigenvalue: b_min,
        b_kernel_min,
        threshold,
        coercive: constant > threshold,
    })
}
