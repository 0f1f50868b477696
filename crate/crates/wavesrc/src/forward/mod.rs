//! Forward wave fields in free space (wave speed 1): moving point sources
//! via retarded time, distributed sources via retarded potentials in the
//! time domain and outgoing Helmholtz potentials in the frequency domain.

use thiserror::Error;

use crate::core::{ValidationError, Vec3};

mod field;
mod helmholtz;
mod potential;
mod retarded;

pub use field::{moving_point_field, simulate_receivers};
pub use helmholtz::{helmholtz_cauchy, helmholtz_cauchy_set};
pub use potential::{retarded_potential, retarded_potential_series};
pub use retarded::{retarded_time, Retardation};

/// Errors from forward field evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("no signal has arrived yet: t = {t} is before the first arrival at {arrival}")]
    NoArrival { t: f64, arrival: f64 },

    #[error("sample step dt = {dt} exceeds the Doppler-safe limit {limit:.6}")]
    StepTooCoarse { dt: f64, limit: f64 },

    #[error("evaluation point is within one grid spacing ({spacing}) of quadrature node {node:?} (distance {distance:.3e})")]
    SingularNode { node: Vec3, distance: f64, spacing: f64 },

    #[error("source support radius {support} must be strictly inside the sphere radius {radius}")]
    SupportTooLarge { support: f64, radius: f64 },

    #[error("Helmholtz mode frequency kappa = {0} must be finite and positive")]
    BadMode(f64),

    #[error("{op} needs a distributed source; a moving point has no volumetric density")]
    NotDistributed { op: &'static str },

    #[error("{op} needs a source with a separated spatial factor f(y)")]
    NotSeparable { op: &'static str },

    #[error(transparent)]
    Invalid(#[from] ValidationError),
}
