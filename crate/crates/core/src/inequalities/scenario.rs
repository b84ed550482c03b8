use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::space::{BasisFamily, BasisSpec, BoundaryRegion, DomainBox};

/// Boundary conditions defining the subspaces of the Laplacian-power scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceTag {
    /// `H²₀` (value and normal derivative vanish) or `H⁴₀` (normal derivatives up to order 3).
    Dirichlet,
    /// `H² ∩ H¹₀` or `H⁴ ∩ H³₀`.
    Navier,
    /// `H⁴_Δ`: `v = 0` and `Δv = 0` on the boundary.
    DeltaBc,
    /// Periodic functions without a further constraint.
    Periodic,
    /// Periodic with `∫_{∂Ω} v ds = 0`.
    PeriodicBoundaryMeanZero,
    /// Periodic with `∫_Ω v dx = 0`.
    PeriodicDomainMeanZero,
    /// No constraint at all; the identities fail here.
    Unconstrained,
}

impl SpaceTag {
    pub fn slug(self) -> &'static str {
        match self {
            SpaceTag::Dirichlet => "dirichlet",
            SpaceTag::Navier => "navier",
            SpaceTag::DeltaBc => "deltabc",
            SpaceTag::Periodic => "periodic",
            SpaceTag::PeriodicBoundaryMeanZero => "periodic-boundary-mean-zero",
            SpaceTag::PeriodicDomainMeanZero => "periodic-domain-mean-zero",
            SpaceTag::Unconstrained => "unconstrained",
        }
    }

    pub fn is_periodic(self) -> bool {
        matches!(
            self,
            SpaceTag::Periodic | SpaceTag::PeriodicBoundaryMeanZero | SpaceTag::PeriodicDomainMeanZero
        )
    }
}

/// One claim together with the parameters it is checked for.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioKind {
    /// `‖v‖²_m ≤ C (|v|²_m + Σ_{|s|<m} (∫ D^s v)²)` on the whole space.
    ClassicalPoincare { m: usize },
    /// `‖v‖²_m ≤ C |v|²_m` when all moments `∫ D^s v`, `|s| < m`, vanish.
    ProjectedPoincare { m: usize },
    /// `‖v‖²_1 ≤ C_p |v|²_1` for mean-zero `v`.
    MeanZeroH1,
    /// `|·|_1` coercive on `{∫_Γ v ds = 0}`.
    BoundaryIntegralZero { gamma: BoundaryRegion<f64> },
    /// `|·|_1` coercive on `{v|_Γ = 0}`.
    BoundaryTraceZero { gamma: BoundaryRegion<f64> },
    /// `‖v‖²_1 ≤ C |v|²_1 + (|Ω| / |Γ|²)(∫_Γ v ds)²` with `C` the mean-zero constant.
    FriedrichsExplicit { gamma: BoundaryRegion<f64> },
    /// `|v|²_1 + ‖v‖²_{L²(Γ)}` coercive on `H¹`.
    FriedrichsL2Boundary { gamma: BoundaryRegion<f64> },
    /// `|·|_2` coercive on `{v(p_1) = … = v(p_{d+1}) = 0}`.
    PointConstraintsH2 { points: Vec<Vec<f64>> },
    /// `|·|_2` coercive on `H² ∩ H¹₀`.
    NavierH2,
    /// `|u|²_2 + Σ u(p_i)²` coercive on `H²`.
    AugmentedPointsH2 { points: Vec<Vec<f64>> },
    /// `‖Δv‖² = |v|²_2` on the tagged space.
    BiLaplaceIdentity(SpaceTag),
    /// `∫ Δu Δv` coercive on the tagged space.
    BiLaplaceCoercivity(SpaceTag),
    /// `‖Δ²v‖² = |v|²_4` on the tagged space.
    QuadLaplaceIdentity(SpaceTag),
    /// `∫ Δ²u Δ²v` coercive on the tagged space.
    QuadLaplaceCoercivity(SpaceTag),
}

/// Names of the fourteen base kinds, in catalog order.
pub const BASE_KINDS: [&str; 14] = [
    "classical-poincare",
    "projected-poincare",
    "mean-zero-h1",
    "boundary-integral-zero",
    "boundary-trace-zero",
    "friedrichs-explicit",
    "friedrichs-l2-boundary",
    "point-constraints-h2",
    "navier-h2",
    "augmented-points-h2",
    "bilaplace-identity",
    "bilaplace-coercivity",
    "quadlaplace-identity",
    "quadlaplace-coercivity",
];

impl ScenarioKind {
    pub fn base_name(&self) -> &'static str {
        match self {
            ScenarioKind::ClassicalPoincare { .. } => BASE_KINDS[0],
            ScenarioKind::ProjectedPoincare { .. } => BASE_KINDS[1],
            ScenarioKind::MeanZeroH1 => BASE_KINDS[2],
            ScenarioKind::BoundaryIntegralZero { .. } => BASE_KINDS[3],
            ScenarioKind::BoundaryTraceZero { .. } => BASE_KINDS[4],
            ScenarioKind::FriedrichsExplicit { .. } => BASE_KINDS[5],
            ScenarioKind::FriedrichsL2Boundary { .. } => BASE_KINDS[6],
            ScenarioKind::PointConstraintsH2 { .. } => BASE_KINDS[7],
            ScenarioKind::NavierH2 => BASE_KINDS[8],
            ScenarioKind::AugmentedPointsH2 { .. } => BASE_KINDS[9],
            ScenarioKind::BiLaplaceIdentity(_) => BASE_KINDS[10],
            ScenarioKind::BiLaplaceCoercivity(_) => BASE_KINDS[11],
            ScenarioKind::QuadLaplaceIdentity(_) => BASE_KINDS[12],
            ScenarioKind::QuadLaplaceCoercivity(_) => BASE_KINDS[13],
        }
    }

    /// Sobolev order of the norm the claim is measured in.
    pub fn sobolev_order(&self) -> usize {
        match self {
            ScenarioKind::ClassicalPoincare { m } | ScenarioKind::ProjectedPoincare { m } => *m,
            ScenarioKind::MeanZeroH1
            | ScenarioKind::BoundaryIntegralZero { .. }
            | ScenarioKind::BoundaryTraceZero { .. }
            | ScenarioKind::FriedrichsExplicit { .. }
            | ScenarioKind::FriedrichsL2Boundary { .. } => 1,
            ScenarioKind::PointConstraintsH2 { .. }
            | ScenarioKind::NavierH2
            | ScenarioKind::AugmentedPointsH2 { .. }
            | ScenarioKind::BiLaplaceIdentity(_)
            | ScenarioKind::BiLaplaceCoercivity(_) => 2,
            ScenarioKind::QuadLaplaceIdentity(_) | ScenarioKind::QuadLaplaceCoercivity(_) => 4,
        }
    }

    pub fn space_tag(&self) -> Option<SpaceTag> {
        match self {
            ScenarioKind::BiLaplaceIdentity(t)
            | ScenarioKind::BiLaplaceCoercivity(t)
            | ScenarioKind::QuadLaplaceIdentity(t)
            | ScenarioKind::QuadLaplaceCoercivity(t) => Some(*t),
            _ => None,
        }
    }

    pub fn gamma(&self) -> Option<&BoundaryRegion<f64>> {
        match self {
            ScenarioKind::BoundaryIntegralZero { gamma }
            | ScenarioKind::BoundaryTraceZero { gamma }
            | ScenarioKind::FriedrichsExplicit { gamma }
            | ScenarioKind::FriedrichsL2Boundary { gamma } => Some(gamma),
            _ => None,
        }
    }

    pub fn points(&self) -> Option<&[Vec<f64>]> {
        match self {
            ScenarioKind::PointConstraintsH2 { points } | ScenarioKind::AugmentedPointsH2 { points } => Some(points),
            _ => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(
            self,
            ScenarioKind::BiLaplaceIdentity(_) | ScenarioKind::QuadLaplaceIdentity(_)
        )
    }

    /// Whether the main reported number is a Poincaré-type constant `C` (which
    /// grows with the space) rather than a coercivity constant `γ`.
    pub fn estimates_upper_constant(&self) -> bool {
        matches!(
            self,
            ScenarioKind::ClassicalPoincare { .. }
                | ScenarioKind::ProjectedPoincare { .. }
                | ScenarioKind::MeanZeroH1
                | ScenarioKind::BoundaryIntegralZero { .. }
                | ScenarioKind::BoundaryTraceZero { .. }
                | ScenarioKind::FriedrichsExplicit { .. }
                | ScenarioKind::FriedrichsL2Boundary { .. }
        )
    }
}

/// A runnable scenario: claim, basis and tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub id: String,
    pub kind: ScenarioKind,
    pub spec: BasisSpec<f64>,
    /// Tolerance for identity residuals and kernel detection.
    pub tol: f64,
}

/// Default tolerance of [`ScenarioConfig`].
pub const DEFAULT_TOL: f64 = 1e-10;

impl ScenarioConfig {
    pub fn new(id: impl Into<String>, kind: ScenarioKind, spec: BasisSpec<f64>) -> Self {
        Self {
            id: id.into(),
            kind,
            spec,
            tol: DEFAULT_TOL,
        }
    }

    pub fn degree(&self) -> usize {
        self.spec.degrees().iter().copied().max().unwrap_or(0)
    }

    pub fn with_degree(mut self, degree: usize) -> Result<Self> {
        self.spec = self.spec.with_degree(degree)?;
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::InvalidInput(format!("tol must be a positive number, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    /// Replaces the box, keeping family and degree. The dimension may change.
    pub fn with_box(mut self, domain: DomainBox<f64>) -> Result<Self> {
        let degree = self.degree();
        let family = self.spec.family();
        let d = domain.dim();
        self.spec = BasisSpec::new(family, vec![degree; d], domain)?;
        Ok(self)
    }

    pub fn with_gamma(mut self, region: BoundaryRegion<f64>) -> Result<Self> {
        match &mut self.kind {
            ScenarioKind::BoundaryIntegralZero { gamma }
            | ScenarioKind::BoundaryTraceZero { gamma }
            | ScenarioKind::FriedrichsExplicit { gamma }
            | ScenarioKind::FriedrichsL2Boundary { gamma } => {
                *gamma = region;
                Ok(self)
            }
            _ => Err(Error::InvalidInput(format!(
                "scenario {} takes no boundary region",
                self.id
            ))),
        }
    }

    pub fn with_points(mut self, new_points: Vec<Vec<f64>>) -> Result<Self> {
        match &mut self.kind {
            ScenarioKind::PointConstraintsH2 { points } | ScenarioKind::AugmentedPointsH2 { points } => {
                *points = new_points;
                Ok(self)
            }
            _ => Err(Error::InvalidInput(format!("scenario {} takes no points", self.id))),
        }
    }

    /// Parameters in a flat, printable form.
    pub fn parameters(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        let family = match self.spec.family() {
            BasisFamily::Legendre => "legendre",
            BasisFamily::Fourier => "fourier",
        };
        p.insert("family".into(), family.into());
        p.insert(
            "box".into(),
            self.spec
                .domain()
                .intervals()
                .iter()
                .map(|(lo, hi)| format!("{lo}:{hi}"))
                .collect::<Vec<_>>()
                .join(","),
        );
        p.insert("m".into(), self.kind.sobolev_order().to_string());
        p.insert("tol".into(), format!("{:e}", self.tol));
        if let Some(t) = self.kind.space_tag() {
            p.insert("space".into(), t.slug().into());
        }
        if let Some(g) = self.kind.gamma() {
            p.insert("gamma".into(), format_region(g));
        }
        if let Some(points) = self.kind.points() {
            p.insert(
                "points".into(),
                points
                    .iter()
                    .map(|x| x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
                    .collect::<Vec<_>>()
                    .join(";"),
            );
        }
        p
    }
}

/// `full`, `face:<id>` or `face:<id>:<a>-<b>` per part, joined by `+`.
pub fn format_region(region: &BoundaryRegion<f64>) -> String {
    region
        .parts()
        .iter()
        .map(|part| {
            if part.fraction == (0.0, 1.0) {
                format!("face:{}", part.face.0)
            } else {
                format!("face:{}:{}-{}", part.face.0, part.fraction.0, part.fraction.1)
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Verified,
    Violated,
    HypothesisFailed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Violated => "violated",
            Verdict::HypothesisFailed => "hypothesis_failed",
        })
    }
}

/// Numerical outcome of one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub id: String,
    pub kind: ScenarioKind,
    pub parameters: BTreeMap<String, String>,
    pub degree: usize,
    /// Named constants (`C`, `C_p`, `gamma_sharp`, `bound`, …).
    pub constants: BTreeMap<String, f64>,
    pub residual: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma_sharp: Option<f64>,
    pub bound: Option<f64>,
    pub kernel_dim: Option<usize>,
    /// `dim(V ∩ P_k)` for the polynomial space the claim must avoid.
    pub polynomial_intersection_dim: Option<usize>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl ScenarioResult {
    pub(crate) fn empty(config: &ScenarioConfig) -> Self {
        Self {
            id: config.id.clone(),
            kind: config.kind.clone(),
            parameters: config.parameters(),
            degree: config.degree(),
            constants: BTreeMap::new(),
            residual: None,
            alpha: None,
            beta: None,
            gamma_sharp: None,
            bound: None,
            kernel_dim: None,
            polynomial_intersection_dim: None,
            verdict: Verdict::Verified,
            notes: Vec::new(),
        }
    }

    /// The number tracked by convergence sweeps: `C` for Poincaré-type claims,
    /// `γ_sharp` for coercivity claims, none for identities.
    pub fn primary_constant(&self) -> Option<f64> {
        if self.kind.is_identity() {
            None
        } else if self.kind.estimates_upper_constant() {
            self.constants.get("C").copied()
        } else {
            self.gamma_sharp
        }
    }
}
