use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::coercivity::{
    augmented_coercivity, coercivity_via_angle, intersection_dim, kernel_of_form, sharp_coercivity, Subspace,
    BOUND_SLACK, COERCIVITY_REL_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::inequalities::scenario::{ScenarioConfig, ScenarioKind, ScenarioResult, SpaceTag, Verdict};
use crate::linalg::{gen_sym_eig, singular_values, sym_eig, Matrix, SymMatrix};
use crate::scalar::Scalar;
use crate::space::{
    assemble_gram, assemble_gram_with_operator, build_subspace, constraint_vector, enumerate_multi_indices,
    polynomial_subspace, BasisFamily, BasisSpec, BoundaryRegion, ConstraintFunctional, ConstraintKind, GramSet,
    IndexMode, Operator, TraceOperator,
};

/// Environment variable holding the seed for all sampled checks.
pub const SEED_ENV: &str = "COERCIVE_KIT_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Random vectors drawn for the explicit Friedrichs inequality.
pub const FRIEDRICHS_SAMPLES: usize = 200;
/// Allowed relative slack of sampled inequalities.
pub const SAMPLED_SLACK: f64 = 1e-10;
/// Affine independence threshold on the smallest singular value of the
/// point-difference matrix, relative to the largest.
pub const AFFINE_REL_TOL: f64 = 1e-10;

/// Seed from [`SEED_ENV`], or [`DEFAULT_SEED`] when unset or unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// `‖Zᵀ(A₁ - A₂)Z‖₂ / max(‖ZᵀA₁Z‖₂, ε)` with `Z` the basis of `V`.
pub fn verify_identity_matrices<T: Scalar>(a1: &SymMatrix<T>, a2: &SymMatrix<T>, v: &Subspace<T>) -> Result<T> {
    for a in [a1, a2] {
        if a.dim() != v.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: v.ambient_dim(),
                found: a.dim(),
            });
        }
    }
    if v.is_trivial() {
        return Ok(T::zero());
    }
    let r1 = v.restrict(a1)?;
    let diff = r1.sub(&v.restrict(a2)?)?;
    let num = sym_eig(&diff)?.scale();
    let den = sym_eig(&r1)?.scale().max(T::min_positive_value());
    Ok(num / den)
}

/// Constraints defining the tagged space at Sobolev order `m` (2 or 4).
pub fn tag_constraints(spec: &BasisSpec<f64>, tag: SpaceTag, m: usize) -> Result<Vec<ConstraintFunctional<f64>>> {
    let d = spec.dim();
    let trace = |t: TraceOperator| {
        constraint_vector(
            spec,
            ConstraintKind::TraceCoefficient {
                region: BoundaryRegion::full(d),
                trace: t,
            },
        )
    };
    Ok(match tag {
        SpaceTag::Dirichlet => (0..m)
            .map(|r| trace(TraceOperator::NormalDerivative(r)))
            .collect::<Result<_>>()?,
        SpaceTag::Navier => (0..m - 1)
            .map(|r| trace(TraceOperator::NormalDerivative(r)))
            .collect::<Result<_>>()?,
        SpaceTag::DeltaBc => {
            if m != 4 {
                return Err(Error::InvalidInput(
                    "the v = 0, Δv = 0 space is only used at order 4".into(),
                ));
            }
            vec![
                trace(TraceOperator::NormalDerivative(0))?,
                trace(TraceOperator::Laplacian)?,
            ]
        }
        SpaceTag::Periodic | SpaceTag::Unconstrained => Vec::new(),
        SpaceTag::PeriodicBoundaryMeanZero => vec![constraint_vector(
            spec,
            ConstraintKind::BoundaryIntegral(BoundaryRegion::full(d)),
        )?],
        SpaceTag::PeriodicDomainMeanZero => vec![constraint_vector(spec, ConstraintKind::MeanValue)?],
    })
}

/// The tagged subspace of the order-`m` space on `spec`.
pub fn tag_subspace(spec: &BasisSpec<f64>, tag: SpaceTag, gram: &GramSet<f64>) -> Result<Subspace<f64>> {
    check_family(spec, tag.is_periodic())?;
    build_subspace(gram, &tag_constraints(spec, tag, gram.order)?)
}

/// `dim(V ∩ P_k)` by the stacked-rank test.
pub fn polynomial_intersection(spec: &BasisSpec<f64>, v: &Subspace<f64>, k: usize) -> Result<usize> {
    let p = Subspace::from_spanning(&polynomial_subspace(spec, k), v.metric().clone())?;
    intersection_dim(v, &p)
}

fn check_family(spec: &BasisSpec<f64>, periodic: bool) -> Result<()> {
    match (spec.family(), periodic) {
        (BasisFamily::Fourier, false) => Err(Error::UnsupportedForBasis(
            "the Fourier family only discretizes periodic spaces".into(),
        )),
        (BasisFamily::Legendre, true) => Err(Error::UnsupportedForBasis(
            "periodic spaces use the Fourier family".into(),
        )),
        _ => Ok(()),
    }
}

fn check_config(config: &ScenarioConfig) -> Result<()> {
    let kind = &config.kind;
    let periodic = kind.space_tag().is_some_and(SpaceTag::is_periodic);
    check_family(&config.spec, periodic)?;
    let m = kind.sobolev_order();
    if m == 0 {
        return Err(Error::InvalidInput("Sobolev order must be >= 1".into()));
    }
    if config.spec.family() == BasisFamily::Legendre {
        if let Some(&p) = config.spec.degrees().iter().min() {
            if p < m {
                return Err(Error::InvalidInput(format!(
                    "Legendre degree {p} is below the Sobolev order {m}"
                )));
            }
        }
    }
    if matches!(
        kind,
        ScenarioKind::BiLaplaceIdentity(SpaceTag::DeltaBc) | ScenarioKind::BiLaplaceCoercivity(SpaceTag::DeltaBc)
    ) {
        return Err(Error::InvalidInput(
            "the v = 0, Δv = 0 space is only used at order 4".into(),
        ));
    }
    if config.spec.dim() == 1 && kind.space_tag() == Some(SpaceTag::DeltaBc) {
        return Err(Error::InvalidInput("the Δ trace needs a rectangle or box".into()));
    }
    Ok(())
}

/// Runs one scenario with the seed from [`SEED_ENV`].
///
/// Violated hypotheses of the claim (too few or dependent points, `|Γ| = 0`,
/// `b` not definite on the kernel) are reported through the verdict, not as
/// errors.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioResult> {
    run_scenario_seeded(config, seed_from_env())
}

pub fn run_scenario_seeded(config: &ScenarioConfig, seed: u64) -> Result<ScenarioResult> {
    check_config(config)?;
    let mut result = ScenarioResult::empty(config);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match run_inner(config, &mut result, &mut rng) {
        Ok(()) => Ok(result),
        Err(Error::HypothesisViolated(msg)) => {
            result.verdict = Verdict::HypothesisFailed;
            result.notes.push(msg);
            Ok(result)
        }
        Err(Error::ZeroMeasureRegion) => {
            result.verdict = Verdict::HypothesisFailed;
            result.notes.push("boundary region has zero measure".into());
            Ok(result)
        }
        Err(e) => Err(e),
    }
}

fn fail(result: &mut ScenarioResult, note: String) {
    result.verdict = Verdict::Violated;
    result.notes.push(note);
}

fn threshold_of(a: &SymMatrix<f64>, metric: &SymMatrix<f64>, v: &Subspace<f64>) -> Result<f64> {
    let eig = gen_sym_eig(&v.restrict(a)?, &v.restrict(metric)?)?;
    Ok(COERCIVITY_REL_THRESHOLD * eig.scale())
}

/// Sharp constant of the seminorm on `V` plus the angle bound against `P_{m-1}`.
fn seminorm_on_subspace(result: &mut ScenarioResult, g: &GramSet<f64>, v: &Subspace<f64>, tol: f64) -> Result<f64> {
    if v.is_trivial() {
        return Err(Error::TrivialSubspace);
    }
    let report = coercivity_via_angle(&g.semi, &g.full, v, tol)?;
    result.alpha = Some(report.angle.alpha);
    result.beta = Some(report.angle.beta);
    result.bound = Some(report.bound);
    result.kernel_dim = Some(report.kernel_dim);
    result.constants.insert("gamma_perp".into(), report.gamma_perp);
    if report.intersects_kernel {
        fail(result, "subspace meets the seminorm kernel".into());
    }
    if !report.bound_holds {
        fail(
            result,
            format!(
                "gamma_sharp {:e} below the angle bound {:e}",
                report.gamma_sharp, report.bound
            ),
        );
    }
    if !report.coercive {
        fail(
            result,
            format!("seminorm not coercive (gamma_sharp {:e})", report.gamma_sharp),
        );
    }
    Ok(report.gamma_sharp)
}

fn require_no_polynomials(
    result: &mut ScenarioResult,
    spec: &BasisSpec<f64>,
    v: &Subspace<f64>,
    k: usize,
) -> Result<()> {
    let dim = polynomial_intersection(spec, v, k)?;
    result.polynomial_intersection_dim = Some(dim);
    if dim != 0 {
        fail(
            result,
            format!("subspace contains {dim} independent polynomials of degree <= {k}"),
        );
    }
    Ok(())
}

fn moment_rows(spec: &BasisSpec<f64>, m: usize) -> Result<Vec<ConstraintFunctional<f64>>> {
    enumerate_multi_indices(spec.dim(), m - 1, IndexMode::UpTo)
        .into_iter()
        .map(|s| constraint_vector(spec, ConstraintKind::DomainIntegralOfDerivative(s)))
        .collect()
}

fn rank_one_sum(n: usize, rows: &[ConstraintFunctional<f64>], weight: f64) -> Result<SymMatrix<f64>> {
    let mut acc = SymMatrix::zeros(n);
    for c in rows {
        for i in 0..c.rows.rows() {
            acc = acc.add(&SymMatrix::outer(c.rows.row(i)).scale(weight))?;
        }
    }
    Ok(acc)
}

/// `1 / λ_min(semi + Σ (∫ D^s v)², full)` over the whole space.
fn classical_constant(spec: &BasisSpec<f64>, g: &GramSet<f64>, m: usize) -> Result<(f64, f64)> {
    let modified = g.semi.add(&rank_one_sum(spec.len(), &moment_rows(spec, m)?, 1.0)?)?;
    let eig = gen_sym_eig(&modified, &g.full)?;
    let lam = eig.values[0];
    Ok((lam, COERCIVITY_REL_THRESHOLD * eig.scale()))
}

fn point_rows(spec: &BasisSpec<f64>, points: &[Vec<f64>]) -> Result<Vec<ConstraintFunctional<f64>>> {
    points
        .iter()
        .map(|p| {
            if p.len() != spec.dim() {
                return Err(Error::HypothesisViolated(format!(
                    "point {p:?} does not have {} coordinates",
                    spec.dim()
                )));
            }
            constraint_vector(spec, ConstraintKind::PointValue(p.clone()))
        })
        .collect()
}

/// `d + 1` points whose difference vectors have full rank.
fn check_affine_points(d: usize, points: &[Vec<f64>]) -> Result<()> {
    if points.len() != d + 1 {
        return Err(Error::HypothesisViolated(format!(
            "needs exactly {} affinely independent points in dimension {d}, got {}",
            d + 1,
            points.len()
        )));
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::HypothesisViolated(format!("every point needs {d} coordinates")));
    }
    let diffs: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let sv = singular_values(&Matrix::from_rows(&diffs)?);
    let (max, min) = (sv[0], *sv.last().expect("d >= 1"));
    if !(max > 0.0) || !(min > AFFINE_REL_TOL * max) {
        return Err(Error::HypothesisViolated("points are affinely dependent".into()));
    }
    Ok(())
}

fn run_inner<R: Rng + ?Sized>(config: &ScenarioConfig, result: &mut ScenarioResult, rng: &mut R) -> Result<()> {
    let spec = &config.spec;
    let tol = config.tol;
    let d = spec.dim();
    match &config.kind {
        ScenarioKind::ClassicalPoincare { m } => {
            let g = assemble_gram(spec, *m)?;
            let (lam, threshold) = classical_constant(spec, &g, *m)?;
            result.kernel_dim = Some(kernel_of_form(&g.semi, &g.full, tol)?.dim());
            result.gamma_sharp = Some(lam);
            result.constants.insert("C".into(), 1.0 / lam);
            if !(lam > threshold) {
                fail(result, format!("modified form not coercive (lambda_min {lam:e})"));
            }
        }
        ScenarioKind::ProjectedPoincare { m } => {
            let g = assemble_gram(spec, *m)?;
            let (lam, _) = classical_constant(spec, &g, *m)?;
            let v = build_subspace(&g, &moment_rows(spec, *m)?)?;
            let gamma = seminorm_on_subspace(result, &g, &v, tol)?;
            require_no_polynomials(result, spec, &v, m - 1)?;
            let (c_proj, c) = (1.0 / gamma, 1.0 / lam);
            result.gamma_sharp = Some(gamma);
            result.constants.insert("C".into(), c_proj);
            result.constants.insert("C_classical".into(), c);
            if c_proj > c * (1.0 + BOUND_SLACK) {
                fail(
                    result,
                    format!("projected constant {c_proj} exceeds the classical constant {c}"),
                );
            }
        }
        ScenarioKind::MeanZeroH1 => {
            let g = assemble_gram(spec, 1)?;
            let v = build_subspace(&g, &[constraint_vector(spec, ConstraintKind::MeanValue)?])?;
            let gamma = seminorm_on_subspace(result, &g, &v, tol)?;
            require_no_polynomials(result, spec, &v, 0)?;
            result.gamma_sharp = Some(gamma);
            result.constants.insert("C".into(), 1.0 / gamma);
            result.constants.insert("C_p".into(), 1.0 / gamma);
        }
        ScenarioKind::BoundaryIntegralZero { gamma: region } | ScenarioKind::BoundaryTraceZero { gamma: region } => {
            let g = assemble_gram(spec, 1)?;
            let kind = if matches!(config.kind, ScenarioKind::BoundaryIntegralZero { .. }) {
                ConstraintKind::BoundaryIntegral(region.clone())
            } else {
                ConstraintKind::TraceCoefficient {
                    region: region.clone(),
                    trace: TraceOperator::NormalDerivative(0),
                }
            };
            let v = build_subspace(&g, &[constraint_vector(spec, kind)?])?;
            let gamma = seminorm_on_subspace(result, &g, &v, tol)?;
            require_no_polynomials(result, spec, &v, 0)?;
            result.gamma_sharp = Some(gamma);
            result.constants.insert("C".into(), 1.0 / gamma);
        }
        ScenarioKind::FriedrichsExplicit { gamma: region } => friedrichs_explicit(spec, region, tol, result, rng)?,
        ScenarioKind::FriedrichsL2Boundary { gamma: region } => {
            let g = assemble_gram(spec, 1)?;
            let b = crate::space::boundary_mass(spec, region)?;
            let rep = augmented_coercivity(&g.semi, &b, &g.full, tol)?;
            result.kernel_dim = Some(rep.kernel_dim);
            result.gamma_sharp = Some(rep.constant);
            result.constants.insert("C".into(), 1.0 / rep.constant);
            if !rep.coercive {
                fail(
                    result,
                    format!("augmented form not coercive (constant {:e})", rep.constant),
                );
            }
        }
        ScenarioKind::PointConstraintsH2 { points } => {
            check_affine_points(d, points)?;
            let g = assemble_gram(spec, 2)?;
            let v = build_subspace(&g, &point_rows(spec, points)?)?;
            let gamma = seminorm_on_subspace(result, &g, &v, tol)?;
            require_no_polynomials(result, spec, &v, 1)?;
            result.gamma_sharp = Some(gamma);
            result
                .notes
                .push("point evaluation is continuous on H2 for d <= 3 (Sobolev embedding), so V is closed".into());
        }
        ScenarioKind::NavierH2 => {
            let g = assemble_gram(spec, 2)?;
            let v = build_subspace(&g, &tag_constraints(spec, SpaceTag::Navier, 2)?)?;
            let gamma = seminorm_on_subspace(result, &g, &v, tol)?;
            require_no_polynomials(result, spec, &v, 1)?;
            result.gamma_sharp = Some(gamma);
        }
        ScenarioKind::AugmentedPointsH2 { points } => {
            let g = assemble_gram(spec, 2)?;
            let b = rank_one_sum(spec.len(), &point_rows(spec, points)?, 1.0)?;
            let rep = augmented_coercivity(&g.semi, &b, &g.full, tol)?;
            result.kernel_dim = Some(rep.kernel_dim);
            result.gamma_sharp = Some(rep.constant);
            if let Some(k) = rep.b_kernel_min {
                result.constants.insert("b_kernel_min".into(), k);
            }
            if !rep.coercive {
                fail(
                    result,
                    format!("augmented form not coercive (constant {:e})", rep.constant),
                );
            }
        }
        ScenarioKind::BiLaplaceIdentity(tag) | ScenarioKind::QuadLaplaceIdentity(tag) => {
            let (m, op) = laplace_power(&config.kind);
            let g = assemble_gram_with_operator(spec, m, op)?;
            let v = tag_subspace(spec, *tag, &g)?;
            let a = g.op.as_ref().expect("operator assembled");
            let residual = verify_identity_matrices(a, &g.semi, &v)?;
            result.residual = Some(residual);
            result.constants.insert("subspace_dim".into(), v.dim() as f64);
            if !(residual <= tol) {
                fail(result, format!("identity residual {residual:e} exceeds {tol:e}"));
            }
        }
        ScenarioKind::BiLaplaceCoercivity(tag) | ScenarioKind::QuadLaplaceCoercivity(tag) => {
            let (m, op) = laplace_power(&config.kind);
            let g = assemble_gram_with_operator(spec, m, op)?;
            let v = tag_subspace(spec, *tag, &g)?;
            if v.is_trivial() {
                return Err(Error::InvalidInput(format!(
                    "the constrained space is trivial at degree {}; raise the degree",
                    config.degree()
                )));
            }
            let a = g.op.as_ref().expect("operator assembled");
            let gamma = sharp_coercivity(a, &g.full, &v)?;
            let threshold = threshold_of(a, &g.full, &v)?;
            let residual = verify_identity_matrices(a, &g.semi, &v)?;
            seminorm_on_subspace(result, &g, &v, tol)?;
            require_no_polynomials(result, spec, &v, 3)?;
            result.gamma_sharp = Some(gamma);
            result.residual = Some(residual);
            result.constants.insert("subspace_dim".into(), v.dim() as f64);
            let bound = result.bound.unwrap_or(0.0);
            if gamma < bound - BOUND_SLACK * gamma.abs().max(1.0) {
                fail(result, format!("gamma_sharp {gamma:e} below the angle bound {bound:e}"));
            }
            if !(gamma > threshold) {
                fail(result, format!("operator form not coercive (gamma_sharp {gamma:e})"));
            }
        }
    }
    Ok(())
}

fn laplace_power(kind: &ScenarioKind) -> (usize, Operator) {
    match kind {
        ScenarioKind::BiLaplaceIdentity(_) | ScenarioKind::BiLaplaceCoercivity(_) => (2, Operator::Laplacian),
        _ => (4, Operator::Bilaplacian),
    }
}

/// Checks `‖v‖²_1 <= C |v|²_1 + (|Ω|/|Γ|²)(∫_Γ v)²` on random vectors, with `C`
/// the mean-zero constant on the same basis, and reports the sharp ratio of
/// the right-hand side to `‖v‖²_1` over the whole space.
fn friedrichs_explicit<R: Rng + ?Sized>(
    spec: &BasisSpec<f64>,
    region: &BoundaryRegion<f64>,
    tol: f64,
    result: &mut ScenarioResult,
    rng: &mut R,
) -> Result<()> {
    let g = assemble_gram(spec, 1)?;
    let v0 = build_subspace(&g, &[constraint_vector(spec, ConstraintKind::MeanValue)?])?;
    let c = 1.0 / sharp_coercivity(&g.semi, &g.full, &v0)?;
    let boundary = constraint_vector(spec, ConstraintKind::BoundaryIntegral(region.clone()))?;
    let measure = region.measure(spec.domain());
    let weight = spec.domain().volume() / (measure * measure);
    let rhs = g.semi.scale(c).add(&rank_one_sum(spec.len(), &[boundary], weight)?)?;
    let eig = gen_sym_eig(&rhs, &g.full)?;
    let sharp = eig.values[0];

    let full = Subspace::full(g.full.clone())?;
    let mut min_slack = f64::INFINITY;
    for _ in 0..FRIEDRICHS_SAMPLES {
        let coords: Vec<f64> = (0..full.dim()).map(|_| rng.sample(StandardNormal)).collect();
        let x = full.element(&coords);
        let lhs = g.full.quadratic_form(&x);
        let slack = (rhs.quadratic_form(&x) - lhs) / lhs;
        min_slack = min_slack.min(slack);
    }
    result.kernel_dim = Some(kernel_of_form(&g.semi, &g.full, tol)?.dim());
    result.gamma_sharp = Some(sharp);
    result.constants.insert("C".into(), c);
    result.constants.insert("boundary_weight".into(), weight);
    result.constants.insert("sharp_ratio".into(), sharp);
    result.constants.insert("min_sampled_slack".into(), min_slack);
    if min_slack < -SAMPLED_SLACK {
        fail(result, format!("sampled slack {min_slack:e} below -{SAMPLED_SLACK:e}"));
    }
    if !(sharp > COERCIVITY_REL_THRESHOLD * eig.scale()) {
        fail(result, format!("right-hand side not coercive (ratio {sharp:e})"));
    }
    if sharp < 1.0 {
        result.notes.push(format!(
            "holds on all {FRIEDRICHS_SAMPLES} sampled vectors, but the sharp ratio over the whole space is {sharp:.6}; \
             functions close to c - e*cos(pi x) with Gamma at x = lo violate it"
        ));
    }
    Ok(())
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub degree: usize,
    pub constant: Option<f64>,
    pub residual: Option<f64>,
    pub verdict: Verdict,
}

/// Runs `config` at each degree. `degrees` must be strictly ascending.
pub fn convergence_sweep(config: &ScenarioConfig, degrees: &[usize]) -> Result<Vec<SweepRow>> {
    if degrees.is_empty() {
        return Err(Error::InvalidInput("degree list is empty".into()));
    }
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("degrees must be strictly ascending".into()));
    }
    let seed = seed_from_env();
    degrees
        .iter()
        .map(|&deg| {
            let r = run_scenario_seeded(&config.clone().with_degree(deg)?, seed)?;
            Ok(SweepRow {
                degree: deg,
                constant: r.primary_constant(),
                residual: r.residual,
                verdict: r.verdict,
            })
        })
        .collect()
}
