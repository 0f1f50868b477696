use thiserror::Error;

/// Construction and validation failures for the shared domain types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("receiver array is empty")]
    EmptyArray,

    #[error("receiver {index} lies off the sphere of radius {radius}: |x| = {actual}")]
    OffSphere { index: usize, radius: f64, actual: f64 },

    #[error("receivers are coplanar: |det| = {det:.3e} is below the tolerance {tol:.3e}")]
    Coplanar { det: f64, tol: f64 },

    #[error("expected exactly 4 receivers for orbit recovery, found {0}")]
    WrongReceiverCount(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("orbit does not start at the origin: |a(0)| = {0:.3e}")]
    OrbitStart(f64),

    #[error("orbit speed {speed:.6} at t = {t:.6} reaches or exceeds the declared bound {bound}")]
    SpeedBound { t: f64, speed: f64, bound: f64 },

    #[error("orbit excursion |a({t:.6})| = {excursion:.6} exceeds the radius bound {bound}")]
    RadiusBound { t: f64, excursion: f64, bound: f64 },

    #[error("speed bound must lie in (0,1), got {0}")]
    BadSpeedBound(f64),

    #[error("sampled orbit needs at least 2 samples, got {0}")]
    TooFewOrbitSamples(usize),

    #[error("sampled orbit queried at t = {t:.6} outside its span [0, {span:.6}]")]
    OrbitSpan { t: f64, span: f64 },

    #[error("time series needs dt > 0, got {0}")]
    NonPositiveStep(f64),

    #[error("time series needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("config field {field} = {value} violates: {rule}")]
    BadConfigField { field: &'static str, value: f64, rule: &'static str },

    #[error(
        "data window T = {t} is too short for orbit recovery: need T > T0 + R + R1 = {needed}"
    )]
    WindowTooShort { t: f64, needed: f64 },
}
