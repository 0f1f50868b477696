//! Quadrature rules (sphere, ball, cylinder) and time-integral transforms
//! (Fourier and Laplace of sampled signals), all with deterministic
//! compensated reductions.

use thiserror::Error;

mod freq;
mod gauss;
mod kahan;
mod sphere;
mod time;
mod volume;

pub use freq::FrequencyGrid;
pub use gauss::gauss_legendre;
pub use kahan::{BlockedComplex, BlockedSum, KahanComplex, KahanSum};
pub use sphere::{sphere_rule, SphereQuadrature};
pub use time::{dft_time, laplace_time};
pub use volume::{ball_rule, cylinder_rule, VolumeRule};

/// Errors from quadrature construction and sampled-signal transforms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("time series has no samples to integrate")]
    EmptySeries,

    #[error("Laplace parameter s = {0} must be positive")]
    NonPositiveS(f64),

    #[error("time-frequency kappa = {0} must be nonnegative")]
    NegativeFrequency(f64),

    #[error("sphere rule order {0} is below the minimum of 2")]
    OrderTooSmall(usize),

    #[error("grid spacing {spacing} is invalid for domain size {extent}: need 0 < spacing < extent")]
    BadSpacing { spacing: f64, extent: f64 },

    #[error("frequency grid must be strictly increasing and positive: {0}")]
    BadFrequencyGrid(&'static str),
}
