//! Source descriptions for the forward solvers.
//!
//! A source is either a moving point (an orbit carrying a cos(ωt) signal) or
//! a distributed density F(y, t). Distributed variants declare a support
//! radius and duration, and those declarations are authoritative: the
//! evaluator returns exactly 0 outside the declared ball and time window, so
//! any tail of a supplied map beyond them is truncated. This keeps causality
//! and quiet-after-passage checks exact instead of "small".

use std::fmt;
use std::sync::Arc;

use super::orbit::Orbit;
use super::vec3::Vec3;

/// Spatial density f(y).
pub type SpatialMap = Arc<dyn Fn(Vec3) -> f64 + Send + Sync>;
/// Scalar profile of one real variable: a time signal g(t) or an axis
/// profile h(x3).
pub type TimeMap = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// In-plane space-time density f(x1, x2, t).
pub type PlaneMap = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
/// Full space-time density F(y, t).
pub type SpaceTimeMap = Arc<dyn Fn(Vec3, f64) -> f64 + Send + Sync>;

/// A radiating (or deliberately non-radiating) acoustic source.
#[derive(Clone)]
pub enum SourceSpec {
    /// Point source on the trajectory `orbit` emitting cos(omega t).
    MovingPoint { orbit: Orbit, omega: f64 },
    /// F(y, t) = f(y) g(t), with f supported in the ball |y| < radius and g
    /// supported in (0, duration).
    Separable {
        f: SpatialMap,
        g: TimeMap,
        radius: f64,
        duration: f64,
    },
    /// F(y, t) = sheet(y1, y2, t) profile(y3): a slab source concentrated
    /// around the y3 = 0 plane. Both factors are supported within `radius`
    /// of their plane/axis origin and the sheet within (0, duration) in time.
    Planar {
        sheet: PlaneMap,
        profile: TimeMap,
        radius: f64,
        duration: f64,
    },
    /// F = d2chi/dt2 - laplacian(chi) for a compactly supported chi: the
    /// field radiated by `force` equals chi itself, hence vanishes outside
    /// the support.
    NonRadiating {
        chi: SpaceTimeMap,
        force: SpaceTimeMap,
        radius: f64,
        duration: f64,
    },
}

impl SourceSpec {
    /// Volumetric density F(y, t); `None` for the moving point, which is not
    /// pointwise evaluable.
    pub fn density(&self, y: Vec3, t: f64) -> Option<f64> {
        match self {
            SourceSpec::MovingPoint { .. } => None,
            SourceSpec::Separable { f, g, radius, duration } => {
                if y.norm() >= *radius || t <= 0.0 || t >= *duration {
                    Some(0.0)
                } else {
                    Some(f(y) * g(t))
                }
            }
            SourceSpec::Planar { sheet, profile, radius, duration } => {
                let plane = (y.x * y.x + y.y * y.y).sqrt();
                if plane >= *radius || y.z.abs() >= *radius || t <= 0.0 || t >= *duration {
                    Some(0.0)
                } else {
                    Some(sheet(y.x, y.y, t) * profile(y.z))
                }
            }
            SourceSpec::NonRadiating { force, radius, duration, .. } => {
                if y.norm() >= *radius || t <= 0.0 || t >= *duration {
                    Some(0.0)
                } else {
                    Some(force(y, t))
                }
            }
        }
    }

    /// Radius of the ball containing the spatial support (the orbit
    /// excursion bound for a moving point). For planar sources this is the
    /// circumscribing ball of the declared slab, radius * sqrt(2).
    pub fn support_radius(&self) -> f64 {
        match self {
            SourceSpec::MovingPoint { orbit, .. } => orbit.radius_bound(),
            SourceSpec::Separable { radius, .. } => *radius,
            SourceSpec::Planar { radius, .. } => *radius * std::f64::consts::SQRT_2,
            SourceSpec::NonRadiating { radius, .. } => *radius,
        }
    }

    /// Length of the emission window (0, T0), if the source has one.
    pub fn support_duration(&self) -> Option<f64> {
        match self {
            SourceSpec::MovingPoint { .. } => None,
            SourceSpec::Separable { duration, .. }
            | SourceSpec::Planar { duration, .. }
            | SourceSpec::NonRadiating { duration, .. } => Some(*duration),
        }
    }
}

impl fmt::Debug for SourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceSpec::MovingPoint { orbit, omega } => f
                .debug_struct("MovingPoint")
                .field("orbit", orbit)
                .field("omega", omega)
                .finish(),
            SourceSpec::Separable { radius, duration, .. } => f
                .debug_struct("Separable")
                .field("radius", radius)
                .field("duration", duration)
                .finish_non_exhaustive(),
            SourceSpec::Planar { radius, duration, .. } => f
                .debug_struct("Planar")
                .field("radius", radius)
                .field("duration", duration)
                .finish_non_exhaustive(),
            SourceSpec::NonRadiating { radius, duration, .. } => f
                .debug_struct("NonRadiating")
                .field("radius", radius)
                .field("duration", duration)
                .finish_non_exhaustive(),
        }
    }
}

// ---------------------------------------------------------------------------
// Non-radiating construction
// ---------------------------------------------------------------------------

/// A twice differentiable space-time bump chi, optionally with closed-form
/// second derivatives. When `time_second` or `laplacian` is absent the
/// derived source falls back to second-order central differences.
#[derive(Clone)]
pub struct ChiSpec {
    pub value: SpaceTimeMap,
    pub time_second: Option<SpaceTimeMap>,
    pub laplacian: Option<SpaceTimeMap>,
    pub radius: f64,
    pub duration: f64,
}

impl fmt::Debug for ChiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChiSpec")
            .field("radius", &self.radius)
            .field("duration", &self.duration)
            .field("exact_time_second", &self.time_second.is_some())
            .field("exact_laplacian", &self.laplacian.is_some())
            .finish()
    }
}

impl ChiSpec {
    /// chi(x, t) = bump(|x| / radius) * bump(2 t / duration - 1): a smooth
    /// bump supported in the ball |x| < radius times the window
    /// (0, duration), peaking at 1 at (0, duration / 2). Ships closed-form
    /// second derivatives.
    pub fn radial_bump(radius: f64, duration: f64) -> Self {
        let a = radius;
        let t0 = duration;
        let value: SpaceTimeMap = {
            Arc::new(move |y: Vec3, t: f64| {
                smooth_bump(y.norm() / a) * smooth_bump(2.0 * t / t0 - 1.0)
            })
        };
        let time_second: SpaceTimeMap = {
            Arc::new(move |y: Vec3, t: f64| {
                let scale = 2.0 / t0;
                smooth_bump(y.norm() / a) * scale * scale * smooth_bump_d2(scale * t - 1.0)
            })
        };
        let laplacian: SpaceTimeMap = {
            Arc::new(move |y: Vec3, t: f64| {
                radial_bump_laplacian(y.norm(), a) * smooth_bump(2.0 * t / t0 - 1.0)
            })
        };
        ChiSpec {
            value,
            time_second: Some(time_second),
            laplacian: Some(laplacian),
            radius,
            duration,
        }
    }

    /// The same chi with the closed-form derivatives removed, forcing the
    /// finite-difference path.
    pub fn without_exact_derivatives(mut self) -> Self {
        self.time_second = None;
        self.laplacian = None;
        self
    }
}

/// Builds the non-radiating source F = d2chi/dt2 - laplacian(chi). The wave
/// field radiated by F with zero initial conditions is chi itself, so it
/// vanishes identically outside supp chi — in particular on any sphere
/// enclosing the support.
///
/// Derivatives use the closed forms carried by `chi` when present, otherwise
/// second-order central differences with step `fd_step`.
///
/// # Panics
/// Panics if a finite-difference fallback would be needed (a closed-form
/// derivative is missing) and `fd_step` is not positive.
pub fn nonradiating_from_chi(chi: &ChiSpec, fd_step: f64) -> SourceSpec {
    assert!(
        (chi.time_second.is_some() && chi.laplacian.is_some()) || fd_step > 0.0,
        "finite-difference derivatives need a positive step"
    );
    let value = chi.value.clone();
    let exact_tt = chi.time_second.clone();
    let exact_lap = chi.laplacian.clone();
    let h = fd_step;
    let force: SpaceTimeMap = Arc::new(move |y: Vec3, t: f64| {
        let d2t = match &exact_tt {
            Some(m) => m(y, t),
            None => (value(y, t + h) - 2.0 * value(y, t) + value(y, t - h)) / (h * h),
        };
        let lap = match &exact_lap {
            Some(m) => m(y, t),
            None => {
                let c = 2.0 * value(y, t);
                let dx = value(Vec3::new(y.x + h, y.y, y.z), t)
                    + value(Vec3::new(y.x - h, y.y, y.z), t);
                let dy = value(Vec3::new(y.x, y.y + h, y.z), t)
                    + value(Vec3::new(y.x, y.y - h, y.z), t);
                let dz = value(Vec3::new(y.x, y.y, y.z + h), t)
                    + value(Vec3::new(y.x, y.y, y.z - h), t);
                (dx + dy + dz - 3.0 * c) / (h * h)
            }
        };
        d2t - lap
    });
    SourceSpec::NonRadiating {
        chi: chi.value.clone(),
        force,
        radius: chi.radius,
        duration: chi.duration,
    }
}

// ---------------------------------------------------------------------------
// Smooth bump profile
// ---------------------------------------------------------------------------

/// C-infinity bump exp(1 - 1/(1 - s^2)) on |s| < 1, zero outside; peaks at
/// bump(0) = 1.
pub fn smooth_bump(s: f64) -> f64 {
    if s * s >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// First derivative of [`smooth_bump`].
pub fn smooth_bump_d1(s: f64) -> f64 {
    if s * s >= 1.0 {
        0.0
    } else {
        let w = 1.0 / (1.0 - s * s);
        -2.0 * s * w * w * smooth_bump(s)
    }
}

/// Second derivative of [`smooth_bump`].
pub fn smooth_bump_d2(s: f64) -> f64 {
    if s * s >= 1.0 {
        0.0
    } else {
        let w = 1.0 / (1.0 - s * s);
        let w2 = w * w;
        (-2.0 * w2 - 8.0 * s * s * w2 * w + 4.0 * s * s * w2 * w2) * smooth_bump(s)
    }
}

/// Laplacian of x -> bump(|x| / a) at radius r: bump''(s)/a^2 +
/// (2/(a r)) bump'(s) with s = r/a. Uses bump'(s)/s = -2 w^2 bump(s), which
/// is singularity-free, so the formula is exact down to r = 0.
pub fn radial_bump_laplacian(r: f64, a: f64) -> f64 {
    let s = r / a;
    if s * s >= 1.0 {
        return 0.0;
    }
    let w = 1.0 / (1.0 - s * s);
    let w2 = w * w;
    let second = -2.0 * w2 - 8.0 * s * s * w2 * w + 4.0 * s * s * w2 * w2;
    let first_over_s = -2.0 * w2;
    (second + 2.0 * first_over_s) * smooth_bump(s) / (a * a)
}

// ---------------------------------------------------------------------------
