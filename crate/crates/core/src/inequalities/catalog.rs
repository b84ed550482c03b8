use crate::inequalities::scenario::{ScenarioConfig, ScenarioKind, SpaceTag};
use crate::space::{BasisSpec, BoundaryRegion, DomainBox, Face};

/// A named scenario with its default configuration.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    /// The claim being checked, in words.
    pub claim: &'static str,
    pub config: ScenarioConfig,
}

fn unit(d: usize) -> DomainBox<f64> {
    DomainBox::unit(d).expect("unit box")
}

fn legendre(d: usize, degree: usize) -> BasisSpec<f64> {
    BasisSpec::legendre(unit(d), degree).expect("valid spec")
}

fn fourier(d: usize, modes: usize) -> BasisSpec<f64> {
    BasisSpec::fourier(unit(d), modes).expect("valid spec")
}

fn entry(id: &'static str, claim: &'static str, kind: ScenarioKind, spec: BasisSpec<f64>) -> CatalogEntry {
    CatalogEntry {
        id,
        claim,
        config: ScenarioConfig::new(id, kind, spec),
    }
}

/// Every shipped scenario, sorted by id.
pub fn catalog() -> Vec<CatalogEntry> {
    use ScenarioKind::*;
    let half_face = BoundaryRegion::face_fraction(Face(0), 0.0, 0.5);
    let mut v = vec![
        entry(
            "classical-poincare-m1",
            "Poincare: |v|_1^2 plus the squared mean bound ||v||_1^2",
            ClassicalPoincare { m: 1 },
            legendre(1, 12),
        ),
        entry(
            "classical-poincare-m2",
            "Poincare: |v|_2^2 plus squared moments of order < 2 bound ||v||_2^2",
            ClassicalPoincare { m: 2 },
            legendre(2, 8),
        ),
        entry(
            "projected-poincare-m1",
            "projected Poincare: ||v||_1^2 <= C |v|_1^2 with the same C when the mean vanishes",
            ProjectedPoincare { m: 1 },
            legendre(1, 12),
        ),
        entry(
            "projected-poincare-m2",
            "projected Poincare: ||v||_2^2 <= C |v|_2^2 with the same C when moments of order < 2 vanish",
            ProjectedPoincare { m: 2 },
            legendre(2, 8),
        ),
        entry(
            "mean-zero-h1",
            "mean-zero Poincare: ||v||_1^2 <= C_p |v|_1^2",
            MeanZeroH1,
            legendre(1, 12),
        ),
        entry(
            "boundary-integral-zero",
            "|.|_1 is coercive on functions with zero boundary integral over Gamma",
            BoundaryIntegralZero {
                gamma: BoundaryRegion::full(2),
            },
            legendre(2, 8),
        ),
        entry(
            "boundary-trace-zero",
            "|.|_1 is coercive on functions vanishing on Gamma",
            BoundaryTraceZero {
                gamma: BoundaryRegion::face(Face(0)),
            },
            legendre(2, 8),
        ),
        entry(
            "friedrichs-explicit",
            "||v||_1^2 <= C |v|_1^2 + |Omega|/|Gamma|^2 (int_Gamma v)^2",
            FriedrichsExplicit {
                gamma: BoundaryRegion::face(Face(0)),
            },
            legendre(2, 8),
        ),
        entry(
            "friedrichs-l2-boundary",
            "|v|_1^2 + ||v||_{L2(Gamma)}^2 is coercive on H1",
            FriedrichsL2Boundary { gamma: half_face },
            legendre(2, 8),
        ),
        entry(
            "point-constraints-h2",
            "|.|_2 is coercive on H2 functions vanishing at d+1 affinely independent points",
            PointConstraintsH2 {
                points: vec![vec![0.0], vec![1.0]],
            },
            legendre(1, 10),
        ),
        entry(
            "navier-h2",
            "|.|_2 is coercive on H2 with zero boundary values",
            NavierH2,
            legendre(2, 10),
        ),
        entry(
            "augmented-points-h2",
            "|u|_2^2 + sum of squared point values is coercive on H2",
            AugmentedPointsH2 {
                points: vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            },
            legendre(2, 6),
        ),
    ];
    let bi_identity: [(&'static str, SpaceTag); 3] = [
        ("bilaplace-identity-dirichlet", SpaceTag::Dirichlet),
        ("bilaplace-identity-navier", SpaceTag::Navier),
        ("bilaplace-identity-periodic", SpaceTag::Periodic),
    ];
    for (id, tag) in bi_identity {
        let spec = if tag.is_periodic() {
            fourier(2, 4)
        } else {
            legendre(2, 6)
        };
        v.push(entry(id, "||Laplace v||_0^2 = |v|_2^2", BiLaplaceIdentity(tag), spec));
    }
    let bi_coercive: [(&'static str, SpaceTag); 4] = [
        ("bilaplace-coercivity-dirichlet", SpaceTag::Dirichlet),
        ("bilaplace-coercivity-navier", SpaceTag::Navier),
        (
            "bilaplace-coercivity-periodic-boundary-mean-zero",
            SpaceTag::PeriodicBoundaryMeanZero,
        ),
        (
            "bilaplace-coercivity-periodic-domain-mean-zero",
            SpaceTag::PeriodicDomainMeanZero,
        ),
    ];
    for (id, tag) in bi_coercive {
        let spec = if tag.is_periodic() {
            fourier(2, 4)
        } else {
            legendre(2, 6)
        };
        v.push(entry(
            id,
            "a(u,v) = int Laplace u Laplace v is coercive",
            BiLaplaceCoercivity(tag),
            spec,
        ));
    }
    let quad_identity: [(&'static str, SpaceTag); 4] = [
        ("quadlaplace-identity-dirichlet", SpaceTag::Dirichlet),
        ("quadlaplace-identity-navier", SpaceTag::Navier),
        ("quadlaplace-identity-deltabc", SpaceTag::DeltaBc),
        ("quadlaplace-identity-periodic", SpaceTag::Periodic),
    ];
    for (id, tag) in quad_identity {
        let spec = if tag.is_periodic() {
            fourier(2, 4)
        } else {
            legendre(2, 8)
        };
        v.push(entry(
            id,
            "||Laplace^2 v||_0^2 = |v|_4^2",
            QuadLaplaceIdentity(tag),
            spec,
        ));
    }
    let quad_coercive: [(&'static str, SpaceTag); 5] = [
        ("quadlaplace-coercivity-dirichlet", SpaceTag::Dirichlet),
        ("quadlaplace-coercivity-navier", SpaceTag::Navier),
        ("quadlaplace-coercivity-deltabc", SpaceTag::DeltaBc),
        (
            "quadlaplace-coercivity-periodic-boundary-mean-zero",
            SpaceTag::PeriodicBoundaryMeanZero,
        ),
        (
            "quadlaplace-coercivity-periodic-domain-mean-zero",
            SpaceTag::PeriodicDomainMeanZero,
        ),
    ];
    for (id, tag) in quad_coercive {
        let spec = if tag.is_periodic() {
            fourier(2, 4)
        } else {
            legendre(2, 8)
        };
        v.push(entry(
            id,
            "a(u,v) = int Laplace^2 u Laplace^2 v is coercive",
            QuadLaplaceCoercivity(tag),
            spec,
        ));
    }
    v.sort_by(|a, b| a.id.cmp(b.id));
    v
}

/// Catalog entry by exact id.
pub fn lookup(id: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.id == id)
}

/// Entries whose id contains `pattern`.
pub fn filter(pattern: &str) -> Vec<CatalogEntry> {
    catalog().into_iter().filter(|e| e.id.contains(pattern)).collect()
}
