//! End-to-end orbit recovery: four receiver recordings to a position history.
//!
//! Each receiver independently yields a distance track by integrating the
//! data-driven ODE; at every grid node the four distances are trilaterated
//! back to a position.  The per-node residual (how far the recovered point
//! is from reproducing the four distances) and the guarded-step fraction
//! travel with the estimate as quality diagnostics.

use super::ode::integrate_distance;
use super::trilateration::trilaterate;
use super::OrbitError;
use crate::core::{validate_receivers, ReceiverArray, TimeSeries, Vec3};

/// Recovered source trajectory on the uniform grid `t_i = i * step`.
#[derive(Debug, Clone)]
pub struct OrbitEstimate {
    pub step: f64,
    pub positions: Vec<Vec3>,
    /// Per-node consistency: the largest gap between the recovered
    /// position's distance to a receiver and that receiver's integrated
    /// distance.
    pub residuals: Vec<f64>,
    /// Node-wise union of the four tracks' guard masks.
    pub guard_mask: Vec<bool>,
    /// Fraction of integration steps where at least one receiver track ran
    /// on a held (guarded) derivative.
    pub guard_fraction: f64,
}

impl OrbitEstimate {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.step
    }
}

/// Recovers the source trajectory over `[0, duration]` from four receiver
/// series recorded on one common time grid.
///
/// `series_set[j]` must be the recording at `array.positions[j]`.
///
/// # Errors
///
/// * [`OrbitError::MismatchedSeries`] unless exactly four series match the
///   four receivers and share a single time grid.
/// * [`OrbitError::SingularGeometry`] for coplanar receivers.
/// * Any [`integrate_distance`] failure on an individual track.
pub fn recover_orbit(
    series_set: &[TimeSeries],
    array: &ReceiverArray,
    omega: f64,
    radius: f64,
    orbit_bound: f64,
    duration: f64,
    h: f64,
    eps_c: f64,
) -> Result<OrbitEstimate, OrbitError> {
    validate_receivers(array)?;
    if array.positions.len() != 4 || series_set.len() != 4 {
        return Err(OrbitError::MismatchedSeries(
            "orbit recovery needs exactly four receivers with one series each",
        ));
    }
    let first = &series_set[0];
    for (series, &x) in series_set.iter().zip(&array.positions) {
        if (series.receiver - x).norm() > 1e-9 * radius {
            return Err(OrbitError::MismatchedSeries(
                "series receiver does not match the array position",
            ));
        }
        let same_grid = (series.t0 - first.t0).abs() <= 1e-12
            && (series.dt - first.dt).abs() <= 1e-15 * first.dt
            && series.len() == first.len();
        if !same_grid {
            return Err(OrbitError::MismatchedSeries("receiver series must share one time grid"));
        }
    }

    let mut tracks = Vec::with_capacity(4);
    for series in series_set {
        tracks.push(integrate_distance(series, omega, radius, orbit_bound, duration, h, eps_c)?);
    }

    let nodes = tracks[0].len();
    let mut positions = Vec::with_capacity(nodes);
    let mut residuals = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let distances = [tracks[0].g[i], tracks[1].g[i], tracks[2].g[i], tracks[3].g[i]];
        let a = trilaterate(array, distances)?;
        let mut residual: f64 = 0.0;
        for (g, &x) in distances.iter().zip(&array.positions) {
            residual = residual.max(((a - x).norm() - g).abs());
        }
        positions.push(a);
        residuals.push(residual);
    }

    let guard_mask: Vec<bool> =
        (0..nodes).map(|i| tracks.iter().any(|tr| tr.guard_mask[i])).collect();
    let guarded = guard_mask.iter().filter(|&&m| m).count();
    let guard_fraction = if nodes > 1 { guarded as f64 / (nodes - 1) as f64 } else { 0.0 };

    Ok(OrbitEstimate { step: h, positions, residuals, guard_mask, guard_fraction })
}

// --- tests -------------------------------------------------------------------
