//! The distance ODE: from one receiver series to one distance track.
//!
//! Writing g(t) for the source-receiver distance, the signal observed at the
//! echo time t + g(t) was emitted exactly at t, so the measured field there
//! equals cos(omega t) / (4 pi g (1 + g')).  Solving for g' gives
//!
//! ```text
//! g'(t) = cos(omega t) / (4 pi g(t) u(x, t + g(t))) - 1,    g(0) = R,
//! ```
//!
//! a scalar ODE driven entirely by data.  The quotient is a removable 0/0
//! wherever cos(omega t) crosses zero: both factors vanish together on the
//! true trajectory, but off it the division is hostile — a distance error
//! delta enters the derivative as roughly delta * omega * tan(omega t), so
//! approaching a carrier zero any error is amplified like 1 / |cos(omega t)|
//! (and contracted again on the way out).  Two defenses keep the integration
//! stable: instants with |cos| or |u| below a floor are guarded, and the
//! derivative held across a guard window is extrapolated from samples taken
//! where the carrier was strong — the near-zero samples are exactly the ones
//! the amplification has already poisoned, and holding them instead feeds
//! the error back each window, compounding it.

use std::f64::consts::PI;

use super::interp::SignalInterpolant;
use super::OrbitError;
use crate::core::{TimeSeries, Vec3};

/// Tolerated excursion beyond the admissible distance band in [`ode_rhs`],
/// as a fraction of the orbit bound.
pub const BAND_MARGIN: f64 = 0.1;

/// Consecutive band clamps tolerated before declaring the track lost.
const MAX_CLAMPS: usize = 5;

/// Derivative samples qualify as hold anchors only when the carrier
/// magnitude |cos(omega t)| is at least this strong.
const HEALTHY_CARRIER: f64 = 0.25;

/// Carrier phase separation (radians) kept between the two hold anchors.
const ANCHOR_PHASE: f64 = 0.12;

/// One evaluation of the ODE right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhsOutcome {
    /// Usable derivative value.
    Value(f64),
    /// A guard fired (carrier or signal too small); the caller should hold
    /// an extrapolated derivative instead.
    Guarded,
}

/// Right-hand side of the distance ODE at time `t`, trial distance `g`.
///
/// Guards fire when `|cos(omega t)| < eps_c` or when the interpolated signal
/// is below the matched floor `eps_c / (16 pi^2 R (R + R1))`; otherwise the
/// quotient `cos(omega t) / u` is clamped to the a-priori magnitude bound
/// `8 pi (R + R1)` and the derivative is returned.
///
/// # Errors
///
/// [`OrbitError::OutOfBand`] when `g` strays more than [`BAND_MARGIN`] times
/// `orbit_bound` outside the admissible band `[R - R1, R + R1]`.
pub fn ode_rhs(
    t: f64,
    g: f64,
    interp: &SignalInterpolant,
    omega: f64,
    radius: f64,
    orbit_bound: f64,
    eps_c: f64,
) -> Result<RhsOutcome, OrbitError> {
    let low = radius - orbit_bound;
    let high = radius + orbit_bound;
    let margin = BAND_MARGIN * orbit_bound;
    if !(g >= low - margin && g <= high + margin) {
        return Err(OrbitError::OutOfBand { g, low: low - margin, high: high + margin });
    }
    let carrier = (omega * t).cos();
    if carrier.abs() < eps_c {
        return Ok(RhsOutcome::Guarded);
    }
    let u = interp.evaluate(t + g);
    let signal_floor = eps_c / (16.0 * PI * PI * radius * high);
    if u.abs() < signal_floor {
        return Ok(RhsOutcome::Guarded);
    }
    let cap = 8.0 * PI * high;
    let quotient = (carrier / u).clamp(-cap, cap);
    Ok(RhsOutcome::Value(quotient / (4.0 * PI * g) - 1.0))
}

// --- guard-window derivative hold ---------------------------------------------

/// Two derivative samples taken at strong-carrier instants, linearly
/// extrapolated to bridge guard windows.
struct SlopeAnchors {
    separation: f64,
    older: Option<(f64, f64)>,
    newer: Option<(f64, f64)>,
}

impl SlopeAnchors {
    fn new(separation: f64) -> Self {
        SlopeAnchors { separation, older: None, newer: None }
    }

    /// Offers an accepted derivative sample; kept only when it is at least
    /// `separation` newer than the current anchor, so the pair never
    /// collapses and slope estimates stay noise-tolerant.
    fn record(&mut self, t: f64, v: f64) {
        match self.newer {
            None => self.newer = Some((t, v)),
            Some((held_t, _)) if t - held_t >= self.separation => {
                self.older = self.newer;
                self.newer = Some((t, v));
            }
            Some(_) => {}
        }
    }

    /// Derivative estimate at `t`: linear through the anchors when two are
    /// set, constant from one, zero before any sample was accepted.
    fn extrapolate(&self, t: f64) -> f64 {
        match (self.older, self.newer) {
            (Some((ta, va)), Some((tb, vb))) if tb > ta => {
                vb + (vb - va) / (tb - ta) * (t - tb)
            }
            (_, Some((_, vb))) => vb,
            _ => 0.0,
        }
    }
}

// --- distance track -----------------------------------------------------------

/// Distance history recovered from one receiver, on the uniform grid
/// `t_i = i * step` over `[0, duration]`.
#[derive(Debug, Clone)]
pub struct DistanceTrack {
    pub receiver: Vec3,
    pub step: f64,
    pub g: Vec<f64>,
    /// `true` at nodes reached through at least one guarded integrator stage.
    pub guard_mask: Vec<bool>,
}

impl DistanceTrack {
    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.step
    }

    /// Fraction of integration steps that ran with a held derivative.
    pub fn guard_fraction(&self) -> f64 {
        if self.guard_mask.len() < 2 {
            return 0.0;
        }
        let guarded = self.guard_mask.iter().filter(|&&m| m).count();
        guarded as f64 / (self.guard_mask.len() - 1) as f64
    }
}

/// Integrates the distance ODE with classical fixed-step RK4 from
/// `g(0) = radius` over `[0, duration]`.
///
/// Guarded stages use a derivative extrapolated from the most recent
/// strong-carrier samples (zero before the first); `guard_mask` records the
/// steps affected.  Iterates are projected back onto the admissible band
/// after each step.
///
/// # Errors
///
/// * [`OrbitError::TooShort`] from interpolant construction.
/// * [`OrbitError::DataGap`] when the series cannot answer every echo-time
///   query in `[0, duration]`.
/// * [`OrbitError::BandEscape`] when an iterate leaves the band by more than
///   ten steps' travel, or needs clamping more than five steps in a row.
///
/// # Panics
///
/// If `h` does not divide `duration`, parameters are not positive, or the
/// receiver does not sit at `radius` from the origin.
pub fn integrate_distance(
    series: &TimeSeries,
    omega: f64,
    radius: f64,
    orbit_bound: f64,
    duration: f64,
    h: f64,
    eps_c: f64,
) -> Result<DistanceTrack, OrbitError> {
    assert!(omega > 0.0 && radius > 0.0 && eps_c > 0.0, "parameters must be positive");
    assert!(orbit_bound > 0.0 && orbit_bound < radius, "orbit bound must sit inside the sphere");
    assert!(h > 0.0 && duration > 0.0, "step and duration must be positive");
    let steps_exact = duration / h;
    let steps = steps_exact.round();
    assert!(
        (steps_exact - steps).abs() < 1e-9 * steps.max(1.0),
        "step size must divide the duration"
    );
    assert!(
        (series.receiver.norm() - radius).abs() <= 1e-9 * radius,
        "receiver must lie on the measurement sphere"
    );
    let steps = steps as usize;

    let interp = SignalInterpolant::new(series)?;
    // Echo-time queries reach duration + radius + orbit_bound; queries below
    // the arrival answer zero, so only the recorded span matters there.
    let need_end = duration + radius + orbit_bound;
    let slack = 1e-9 * series.dt.max(1.0);
    if series.first_arrival.unwrap_or(series.t0) < series.t0 - slack
        || interp.end() < need_end - slack
    {
        return Err(OrbitError::DataGap {
            need_start: (radius - orbit_bound).min(series.t0),
            need_end,
            have_start: series.t0,
            have_end: series.t_end(),
        });
    }

    let low = radius - orbit_bound;
    let high = radius + orbit_bound;
    let escape_low = low - 10.0 * h;
    let escape_high = high + 10.0 * h;

    let mut g = radius;
    let mut track = Vec::with_capacity(steps + 1);
    let mut mask = Vec::with_capacity(steps + 1);
    track.push(g);
    mask.push(false);

    let mut anchors = SlopeAnchors::new((ANCHOR_PHASE / omega).max(2.0 * h));
    let mut clamps_in_a_row = 0;
    for n in 0..steps {
        let t = n as f64 * h;
        let mut guarded = false;
        let mut stage = |tt: f64, gg: f64| -> Result<f64, OrbitError> {
            match ode_rhs(tt, gg, &interp, omega, radius, orbit_bound, eps_c)? {
                RhsOutcome::Value(v) => {
                    if (omega * tt).cos().abs() >= HEALTHY_CARRIER {
                        anchors.record(tt, v);
                    }
                    Ok(v)
                }
                RhsOutcome::Guarded => {
                    guarded = true;
                    Ok(anchors.extrapolate(tt))
                }
            }
        };
        let k1 = stage(t, g)?;
        let k2 = stage(t + 0.5 * h, g + 0.5 * h * k1)?;
        let k3 = stage(t + 0.5 * h, g + 0.5 * h * k2)?;
        let k4 = stage(t + h, g + h * k3)?;
        g += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;

        let reached = (n + 1) as f64 * h;
        if !(escape_low..=escape_high).contains(&g) {
            return Err(OrbitError::BandEscape { time: reached, g });
        }
        if g < low || g > high {
            g = g.clamp(low, high);
            clamps_in_a_row += 1;
            if clamps_in_a_row > MAX_CLAMPS {
                return Err(OrbitError::BandEscape { time: reached, g });
            }
        } else {
            clamps_in_a_row = 0;
        }
        track.push(g);
        mask.push(guarded);
    }

    Ok(DistanceTrack { receiver: series.receiver, step: h, g: track, guard_mask: mask })
}

// --- tests -------------------------------------------------------------------
