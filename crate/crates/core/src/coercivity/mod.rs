//! Kernels of forms, angles between subspaces and coercivity constants.

mod forms;
mod subspace;

pub use forms::{
    augmented_coercivity, coercivity_via_angle, kernel_of_form, kernel_split, projection_bounds_check,
    sharp_coercivity, subspace_angle, AngleResult, AugmentedReport, CoercivityReport, KernelSplit, ProjectionBounds,
    BOUND_SLACK, COERCIVITY_REL_THRESHOLD, INTERSECTION_GAP, KERNEL_REL_TOL,
};
pub use subspace::{intersection_dim, Subspace, ORTHONORMALITY_TOL};
