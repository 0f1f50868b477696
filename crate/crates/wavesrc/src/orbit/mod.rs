//! Moving-source recovery from receiver time series.
//!
//! Four receivers on the measurement sphere each observe the signal of one
//! moving narrowband point source.  Per receiver, the source-receiver
//! distance g(t) satisfies a scalar ODE driven by the measured signal
//! evaluated at the echo time t + g(t); integrating it from g(0) = R turns
//! each series into a distance track.  Four distances to non-coplanar
//! receivers then pin the source position at every time node by exact
//! trilateration.

use thiserror::Error;

use crate::core::ValidationError;

mod interp;
mod ode;
mod recover;
mod trilateration;

pub use interp::SignalInterpolant;
pub use ode::{integrate_distance, ode_rhs, DistanceTrack, RhsOutcome, BAND_MARGIN};
pub use recover::{recover_orbit, OrbitEstimate};
pub use trilateration::trilaterate;

/// Errors from the distance-ODE and trilateration pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrbitError {
    #[error("signal interpolation needs at least 4 samples past the arrival, found {found}")]
    TooShort { found: usize },

    #[error("series covers [{have_start}, {have_end}] but the integration queries [{need_start}, {need_end}]")]
    DataGap { need_start: f64, need_end: f64, have_start: f64, have_end: f64 },

    #[error("distance {g} is outside the admissible band [{low}, {high}]")]
    OutOfBand { g: f64, low: f64, high: f64 },

    #[error("distance iterate escaped the admissible band at t = {time} (g = {g})")]
    BandEscape { time: f64, g: f64 },

    #[error("receiver geometry is too flat to trilaterate (determinant {det:.3e})")]
    SingularGeometry { det: f64 },

    #[error("receiver series do not share one time grid and receiver set: {0}")]
    MismatchedSeries(&'static str),

    #[error(transparent)]
    Invalid(#[from] ValidationError),
}
