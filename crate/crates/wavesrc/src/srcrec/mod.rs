//! Source reconstruction from boundary Cauchy data.
//!
//! Pairing the (field, normal-derivative) traces on a sphere with test
//! solutions of the homogeneous Helmholtz equation yields Fourier data of
//! the interior source: plane-wave tests give the 3D spatial spectrum one
//! (frequency, direction) sample at a time; growing-exponential tests give
//! space-time spectrum samples of slab sources. Band-limited inverse
//! synthesis then reconstructs the source density on any point set.

use thiserror::Error;

mod cauchy;
mod moments;
mod planar;
mod spectrum;

pub use cauchy::CauchyData;
pub use moments::moment_3d;
pub use planar::{h_weight, moment_planar, AxialProfile, GROWTH_LIMIT};
pub use spectrum::{invert_bandlimited, recover_spectrum_3d, PolarSpectrum};

/// Errors from moment extraction and spectrum inversion.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MomentError {
    #[error("test direction must be a unit vector: |d| = {0}")]
    DirectionNotUnit(f64),

    #[error("boundary data arrays have {values} values and {derivs} normal derivatives for a rule of {nodes} nodes")]
    MismatchedData { values: usize, derivs: usize, nodes: usize },

    #[error("frequency kappa = {0} must be positive")]
    BadKappa(f64),

    #[error("spectrum holds no usable frequencies")]
    EmptySpectrum,

    #[error("test functions need kappa1 > kappa > 0, got kappa1 = {kappa1}, kappa = {kappa}")]
    BadFrequencyPair { kappa: f64, kappa1: f64 },

    #[error("axial profile weight {weight:.3e} is below the usable floor {floor:.3e} (growth exponent mu R = {mu_r:.2})")]
    SmallHWeight { weight: f64, floor: f64, mu_r: f64 },
}
