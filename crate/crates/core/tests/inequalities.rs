mod common;

use std::f64::consts::PI;

use coercive_kit::coercivity::Subspace;
use coercive_kit::inequalities::{
    convergence_sweep, lookup, polynomial_intersection, run_scenario, tag_subspace, ScenarioConfig, ScenarioKind,
    SpaceTag, Verdict,
};
use coercive_kit::space::{
    assemble_gram, assemble_gram_with_operator, constraint_vector, polynomial_subspace, BasisSpec, BoundaryRegion,
    ConstraintKind, DomainBox, Face, Operator,
};
use common::*;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;

fn config(id: &str) -> ScenarioConfig {
    lookup(id).unwrap_or_else(|| panic!("{id} is in the catalog")).config
}

fn constant(id: &str, key: &str) -> f64 {
    run_scenario(&config(id)).unwrap().constants[key]
}

/// min over k of r(kπ) for a Rayleigh quotient written in the frequency.
fn mode_min(kmax: usize, r: impl Fn(f64) -> f64) -> f64 {
    (1..=kmax).map(|k| r(k as f64 * PI)).fold(f64::INFINITY, f64::min)
}

#[test]
fn classical_poincare_constant_in_one_dimension() {
    // constants and mean-zero parts decouple; the mean-zero minimum sits at cos(πx)
    let oracle = 1.0 / mode_min(200, |w| w * w / (1.0 + w * w)).min(1.0);
    let c = constant("classical-poincare-m1", "C");
    assert!((c - oracle).abs() < 1e-8, "{c} vs {oracle}");
}

#[test]
fn point_constraints_in_one_dimension_match_sine_series() {
    let oracle = mode_min(200, |w| w.powi(4) / (1.0 + w * w + w.powi(4)));
    let r = run_scenario(&config("point-constraints-h2")).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    let gamma = r.gamma_sharp.unwrap();
    assert!((gamma - oracle).abs() < 1e-6, "{gamma} vs {oracle}");
}

#[test]
fn projected_poincare_chain_on_random_vectors() {
    let c_est = run_scenario(&config("classical-poincare-m1").with_degree(8).unwrap())
        .unwrap()
        .constants["C"];
    let spec = BasisSpec::legendre(DomainBox::unit(1).unwrap(), 8).unwrap();
    let g = assemble_gram(&spec, 1).unwrap();
    let constants = Subspace::from_spanning(&polynomial_subspace(&spec, 0), g.full.clone()).unwrap();
    let mut rng = rng(31);
    for _ in 0..200 {
        let u: Vec<f64> = (0..spec.len()).map(|_| rng.sample(StandardNormal)).collect();
        let pu = constants.project(&u);
        let r: Vec<f64> = u.iter().zip(&pu).map(|(a, b)| a - b).collect();
        let lhs = g.full.quadratic_form(&r);
        let rhs = c_est * g.semi.quadratic_form(&u);
        assert!(lhs <= rhs * (1.0 + 1e-12), "{lhs} > {rhs}");
    }
}

fn explicit_friedrichs_holds_on_samples(region: BoundaryRegion<f64>, stream: u64) {
    let c_est = run_scenario(
        &config("mean-zero-h1")
            .with_box(DomainBox::unit(2).unwrap())
            .unwrap()
            .with_degree(8)
            .unwrap(),
    )
    .unwrap()
    .constants["C"];
    let spec = BasisSpec::legendre(DomainBox::unit(2).unwrap(), 8).unwrap();
    let g = assemble_gram(&spec, 1).unwrap();
    let row = constraint_vector(&spec, ConstraintKind::BoundaryIntegral(region.clone()))
        .unwrap()
        .rows;
    let measure = region.measure(spec.domain());
    let full = Subspace::full(g.full.clone()).unwrap();
    let mut rng = rng(stream);
    for _ in 0..200 {
        let coords: Vec<f64> = (0..spec.len()).map(|_| rng.sample(StandardNormal)).collect();
        let v = full.element(&coords);
        let boundary: f64 = row.row(0).iter().zip(&v).map(|(a, b)| a * b).sum();
        let lhs = g.full.quadratic_form(&v);
        let rhs = c_est * g.semi.quadratic_form(&v) + boundary * boundary / (measure * measure);
        assert!((rhs - lhs) / lhs >= -1e-10, "{rhs} < {lhs}");
    }
}

#[test]
fn explicit_friedrichs_on_samples_one_face() {
    explicit_friedrichs_holds_on_samples(BoundaryRegion::face(Face(0)), 41);
}

#[test]
fn explicit_friedrichs_on_samples_full_boundary() {
    explicit_friedrichs_holds_on_samples(BoundaryRegion::full(2), 42);
}

#[test]
fn explicit_friedrichs_fails_for_cosine_perturbation_of_constants() {
    // v = 1 - ε cos(πx) on (0,1)², Γ = {x = 0}: |Ω| = |Γ| = 1 and, with the exact
    // constant C = 1 + 1/π², rhs - lhs = ε² - 2ε < 0.
    let c = constant("mean-zero-h1", "C");
    let eps = 0.1;
    let lhs = 1.0 + eps * eps * (1.0 + PI * PI) / 2.0;
    let rhs = c * eps * eps * PI * PI / 2.0 + (1.0 - eps).powi(2);
    assert!(rhs < lhs - 0.1, "{rhs} vs {lhs}");

    let r = run_scenario(&config("friedrichs-explicit")).unwrap();
    assert!(r.constants["sharp_ratio"] < 1.0);
    assert!(r.constants["min_sampled_slack"] >= -1e-10);
    assert_eq!(r.verdict, Verdict::Verified);
    assert!(r.notes.iter().any(|n| n.contains("sharp ratio")));
}

#[test]
fn trace_zero_is_more_coercive_than_integral_zero() {
    for region in [
        BoundaryRegion::full(2),
        BoundaryRegion::face(Face(0)),
        BoundaryRegion::face_fraction(Face(3), 0.0, 0.5),
    ] {
        let gamma = |kind: ScenarioKind| {
            let c = ScenarioConfig::new(
                "nesting",
                kind,
                BasisSpec::legendre(DomainBox::unit(2).unwrap(), 8).unwrap(),
            );
            run_scenario(&c).unwrap().gamma_sharp.unwrap()
        };
        let integral = gamma(ScenarioKind::BoundaryIntegralZero { gamma: region.clone() });
        let trace = gamma(ScenarioKind::BoundaryTraceZero { gamma: region.clone() });
        assert!(trace >= integral - 1e-10, "{trace} < {integral}");
    }
}

#[test]
fn periodic_identities_are_exact() {
    for id in ["bilaplace-identity-periodic", "quadlaplace-identity-periodic"] {
        let residual = run_scenario(&config(id)).unwrap().residual.unwrap();
        assert!(residual <= 1e-12, "{id}: {residual:e}");
    }
}

#[test]
fn constrained_spaces_contain_no_cubics() {
    let rect = DomainBox::new(vec![(0.0, 1.0), (0.0, 1.5)]).unwrap();
    for (m, op, tags) in [
        (2, Operator::Laplacian, &[SpaceTag::Dirichlet, SpaceTag::Navier][..]),
        (
            4,
            Operator::Bilaplacian,
            &[SpaceTag::Dirichlet, SpaceTag::Navier, SpaceTag::DeltaBc][..],
        ),
    ] {
        let spec = BasisSpec::legendre(rect.clone(), 2 * m + 2).unwrap();
        let g = assemble_gram_with_operator(&spec, m, op).unwrap();
        for &tag in tags {
            let v = tag_subspace(&spec, tag, &g).unwrap();
            assert!(!v.is_trivial());
            assert_eq!(polynomial_intersection(&spec, &v, 3).unwrap(), 0, "{tag:?}, m = {m}");
        }
    }
    let spec = BasisSpec::fourier(rect, 3).unwrap();
    let g = assemble_gram(&spec, 4).unwrap();
    for tag in [SpaceTag::PeriodicBoundaryMeanZero, SpaceTag::PeriodicDomainMeanZero] {
        let v = tag_subspace(&spec, tag, &g).unwrap();
        assert_eq!(polynomial_intersection(&spec, &v, 3).unwrap(), 0, "{tag:?}");
    }
}

#[test]
fn mean_zero_sweep_is_non_decreasing() {
    let rows = convergence_sweep(&config("mean-zero-h1"), &[4, 6, 8, 10, 12]).unwrap();
    assert_eq!(rows.len(), 5);
    let c: Vec<f64> = rows.iter().map(|r| r.constant.unwrap()).collect();
    for w in c.windows(2) {
        assert!(w[1] >= w[0] - 1e-10, "{c:?}");
    }
    assert!((c[4] - c[3]).abs() < 1e-8, "{c:?}");
}

#[test]
fn navier_sweep_is_non_increasing() {
    let rows = convergence_sweep(&config("navier-h2"), &[4, 6, 8]).unwrap();
    let g: Vec<f64> = rows.iter().map(|r| r.constant.unwrap()).collect();
    for w in g.windows(2) {
        assert!(w[1] <= w[0] + 1e-10, "{g:?}");
    }
}

#[test]
fn sweep_edge_cases() {
    assert_eq!(convergence_sweep(&config("navier-h2"), &[6]).unwrap().len(), 1);
    assert!(convergence_sweep(&config("mean-zero-h1"), &[8, 6]).is_err());
    assert!(convergence_sweep(&config("mean-zero-h1"), &[6, 6]).is_err());
}

#[test]
fn unconstrained_laplacian_identity_fails() {
    let spec = BasisSpec::legendre(DomainBox::unit(2).unwrap(), 2).unwrap();
    let c = ScenarioConfig::new(
        "unconstrained",
        ScenarioKind::BiLaplaceIdentity(SpaceTag::Unconstrained),
        spec.clone(),
    );
    let r = run_scenario(&c).unwrap();
    assert!(r.residual.unwrap() > 1e-3);
    assert_eq!(r.verdict, Verdict::Violated);

    // On the unit square x = (P0 + P1)/2 and x² = P0/3 + P1/2 + P2/6 in the shifted Legendre basis.
    let g = assemble_gram_with_operator(&spec, 2, Operator::Laplacian).unwrap();
    let lap = g.op.unwrap();
    let coeff = |pairs: &[((usize, usize), f64)]| {
        let mut v = vec![0.0; spec.len()];
        for &((i, j), c) in pairs {
            v[spec.flat_index(&[i, j])] = c;
        }
        v
    };
    // x²: ‖Δv‖² = 4 = |v|²_2, so this function does not separate the forms
    let x2 = coeff(&[((0, 0), 1.0 / 3.0), ((1, 0), 0.5), ((2, 0), 1.0 / 6.0)]);
    assert!((lap.quadratic_form(&x2) - 4.0).abs() < 1e-12);
    assert!((g.semi.quadratic_form(&x2) - 4.0).abs() < 1e-12);
    // xy: ‖Δv‖² = 0 while |v|²_2 = 2 ∫ (∂x∂y v)² = 2
    let xy = coeff(&[((0, 0), 0.25), ((1, 0), 0.25), ((0, 1), 0.25), ((1, 1), 0.25)]);
    assert!(lap.quadratic_form(&xy).abs() < 1e-12);
    assert!((g.semi.quadratic_form(&xy) - 2.0).abs() < 1e-12);
}

#[test]
fn hypothesis_failures_become_verdicts() {
    let dependent = config("augmented-points-h2")
        .with_points(vec![vec![0.0, 0.0], vec![1.0, 0.0]])
        .unwrap();
    assert_eq!(run_scenario(&dependent).unwrap().verdict, Verdict::HypothesisFailed);

    let collinear = config("point-constraints-h2")
        .with_box(DomainBox::unit(2).unwrap())
        .unwrap()
        .with_points(vec![vec![0.0, 0.0], vec![0.5, 0.5], vec![1.0, 1.0]])
        .unwrap();
    assert_eq!(run_scenario(&collinear).unwrap().verdict, Verdict::HypothesisFailed);

    let empty = config("boundary-integral-zero")
        .with_gamma(BoundaryRegion::face_fraction(Face(0), 0.5, 0.5))
        .unwrap();
    assert_eq!(run_scenario(&empty).unwrap().verdict, Verdict::HypothesisFailed);
}

#[test]
fn inconsistent_configs_are_errors() {
    let periodic_on_legendre = ScenarioConfig::new(
        "bad",
        ScenarioKind::BiLaplaceIdentity(SpaceTag::PeriodicDomainMeanZero),
        BasisSpec::legendre(DomainBox::unit(2).unwrap(), 6).unwrap(),
    );
    assert!(run_scenario(&periodic_on_legendre).is_err());
    assert!(config("navier-h2")
        .with_degree(1)
        .map(|c| run_scenario(&c))
        .map_or(true, |r| r.is_err()));
}

proptest! {
    #![proptest_config(proptest_config(16))]

    #[test]
    fn results_are_deterministic(index in 0usize..28) {
        let entries = coercive_kit::inequalities::catalog();
        let c = &entries[index].config;
        prop_assert_eq!(run_scenario(c).unwrap(), run_scenario(c).unwrap());
    }

    #[test]
    fn mean_zero_constant_scales_with_the_box(len in 0.5f64..3.0) {
        // C(L) = 1 + L²/π² on (0, L)
        let c = config("mean-zero-h1").with_box(DomainBox::new(vec![(0.0, len)]).unwrap()).unwrap();
        let got = run_scenario(&c).unwrap().constants["C"];
        let oracle = 1.0 / mode_min(200, |w| { let w = w / len; w * w / (1.0 + w * w) });
        prop_assert!((got - oracle).abs() < 1e-8 * oracle, "{got} vs {oracle}");
    }

    #[test]
    fn random_vectors_respect_the_mean_zero_constant(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let c = constant("mean-zero-h1", "C");
        let spec = BasisSpec::legendre(DomainBox::unit(1).unwrap(), 12).unwrap();
        let g = assemble_gram(&spec, 1).unwrap();
        let mean = constraint_vector(&spec, ConstraintKind::MeanValue).unwrap().rows;
        let v = Subspace::from_spanning(&coercive_kit::linalg::nullspace(&mean, 1e-10), g.full.clone()).unwrap();
        let coords: Vec<f64> = (0..v.dim()).map(|_| rng.sample(StandardNormal)).collect();
        let x = v.element(&coords);
        prop_assert!(g.full.quadratic_form(&x) <= c * g.semi.quadratic_form(&x) * (1.0 + 1e-12));
    }
}
