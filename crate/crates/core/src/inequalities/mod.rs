//! Scenario catalog: Poincaré- and Friedrichs-type inequalities and
//! Laplacian-power identities and coercivity claims, checked numerically.

mod catalog;
mod run;
mod scenario;

pub use catalog::{catalog, filter, lookup, CatalogEntry};
pub use run::{
    convergence_sweep, polynomial_intersection, run_scenario, run_scenario_seeded, seed_from_env, tag_constraints,
    tag_subspace, verify_identity_matrices, SweepRow, AFFINE_REL_TOL, DEFAULT_SEED, FRIEDRICHS_SAMPLES, SAMPLED_SLACK,
    SEED_ENV,
};
pub use scenario::{
    format_region, ScenarioConfig, ScenarioKind, ScenarioResult, SpaceTag, Verdict, BASE_KINDS, DEFAULT_TOL,
};
