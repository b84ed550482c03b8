//! Numerical verification of coercivity for symmetric bilinear forms on
//! subspaces of discretized Sobolev spaces.

// `!(x > t)` is meant to be true for NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coercivity;
pub mod error;
pub mod inequalities;
pub mod linalg;
pub mod scalar;
pub mod space;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Matrix64 = linalg::Matrix<f64>;
pub type SymMatrix64 = linalg::SymMatrix<f64>;
pub type BasisSpec64 = space::BasisSpec<f64>;
pub type DomainBox64 = space::DomainBox<f64>;
pub type Subspace64 = coercivity::Subspace<f64>;
pub type CoercivityReport64 = coercivity::CoercivityReport<f64>;
