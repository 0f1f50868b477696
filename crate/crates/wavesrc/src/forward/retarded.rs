//! Retarded-time inversion for moving sources.

use super::FieldError;
use crate::core::{Orbit, Vec3};

/// Solution of the retarded-time equation s + |x - a(s)| = t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Retardation {
    /// Emission time s*.
    pub emission_time: f64,
    /// Source-receiver distance g = |x - a(s*)| at emission.
    pub distance: f64,
    /// Radial speed g'(s*) = d/ds |x - a(s)|, in (-1, 1); the Doppler factor
    /// is 1 + radial_rate.
    pub radial_rate: f64,
}

/// Maximum bisection iterations; the bracket is at most |x| + R1 wide, so 60
/// halvings push it far below machine precision.
const MAX_BISECTIONS: usize = 60;

/// Solves s + |x - a(s)| = t for the emission time s* >= 0.
///
/// The map s -> s + |x - a(s)| is strictly increasing (slope 1 + g' > 0
/// because the orbit is slower than the wave), so the solution is unique and
/// safely bracketed on [max(0, t - |x| - R1), t]. Bisection is used instead
/// of Newton because the slope may approach zero as the source speed
/// approaches 1. The result satisfies |s* + g - t| <= tol.
///
/// Signals emitted exactly at switch-on (t equal to the first arrival
/// |x - a(0)|) resolve to s* = 0, the limit from later times.
///
/// # Panics
/// Panics if `tol <= 0` or if `x` is not strictly outside the orbit bound.
pub fn retarded_time(orbit: &Orbit, x: Vec3, t: f64, tol: f64) -> Result<Retardation, FieldError> {
    assert!(tol > 0.0, "root tolerance must be positive");
    assert!(
        x.norm() > orbit.radius_bound(),
        "receiver must be outside the orbit region"
    );
    let arrival = (x - orbit.position(0.0)).norm();
    if t < arrival {
        return Err(FieldError::NoArrival { t, arrival });
    }
    if t == arrival {
        return Ok(resolve(orbit, x, 0.0));
    }
    let flight = |s: f64| s + (x - orbit.position(s)).norm();
    let mut lo = (t - x.norm() - orbit.radius_bound()).max(0.0);
    let mut hi = t;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let fm = flight(mid);
        if (fm - t).abs() <= tol {
            return Ok(resolve(orbit, x, mid));
        }
        if fm > t {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(resolve(orbit, x, 0.5 * (lo + hi)))
}

fn resolve(orbit: &Orbit, x: Vec3, s: f64) -> Retardation {
    let d = x - orbit.position(s);
    let g = d.norm();
    Retardation {
        emission_time: s,
        distance: g,
        radial_rate: -d.dot(orbit.velocity(s)) / g,
    }
}

// ---------------------------------------------------------------------------
