use super::error::ValidationError;
use super::vec3::Vec3;

/// Trajectory of a moving point source.
///
/// Every orbit starts at the origin at t = 0, never leaves the ball of
/// radius `radius_bound`, and moves strictly slower than the (unit) wave
/// speed. Closed-form paths are defined for all t >= 0; a sampled path is
/// defined on its sample span.
#[derive(Debug, Clone)]
pub struct Orbit {
    path: OrbitPath,
    speed_bound: f64,
    radius_bound: f64,
}

/// The shape of the trajectory.
#[derive(Debug, Clone)]
pub enum OrbitPath {
    /// Source at rest at the origin.
    Fixed,
    /// a(t) = v t.
    Linear { velocity: Vec3 },
    /// a(t) = rho (sin Wt, 1 - cos Wt, 0): a circle through the origin in
    /// the z = 0 plane, traversed at constant speed rho W.
    Circular { rho: f64, rate: f64 },
    /// Positions and velocities on a uniform time grid, joined by cubic
    /// Hermite segments.
    Sampled(SampledPath),
}

impl Orbit {
    pub fn new(path: OrbitPath, speed_bound: f64, radius_bound: f64) -> Self {
        Orbit { path, speed_bound, radius_bound }
    }

    /// Source at rest at the origin.
    pub fn fixed(speed_bound: f64, radius_bound: f64) -> Self {
        Orbit::new(OrbitPath::Fixed, speed_bound, radius_bound)
    }

    pub fn linear(velocity: Vec3, speed_bound: f64, radius_bound: f64) -> Self {
        Orbit::new(OrbitPath::Linear { velocity }, speed_bound, radius_bound)
    }

    pub fn circular(rho: f64, rate: f64, speed_bound: f64, radius_bound: f64) -> Self {
        Orbit::new(OrbitPath::Circular { rho, rate }, speed_bound, radius_bound)
    }

    pub fn position(&self, t: f64) -> Vec3 {
        match &self.path {
            OrbitPath::Fixed => Vec3::ZERO,
            OrbitPath::Linear { velocity } => *velocity * t,
            OrbitPath::Circular { rho, rate } => {
                let p = rate * t;
                Vec3::new(rho * p.sin(), rho * (1.0 - p.cos()), 0.0)
            }
            OrbitPath::Sampled(s) => s.position(t),
        }
    }

    pub fn velocity(&self, t: f64) -> Vec3 {
        match &self.path {
            OrbitPath::Fixed => Vec3::ZERO,
            OrbitPath::Linear { velocity } => *velocity,
            OrbitPath::Circular { rho, rate } => {
                let p = rate * t;
                Vec3::new(rho * rate * p.cos(), rho * rate * p.sin(), 0.0)
            }
            OrbitPath::Sampled(s) => s.velocity(t),
        }
    }

    pub fn path(&self) -> &OrbitPath {
        &self.path
    }

    /// Declared supremum of the source speed, strictly below 1.
    pub fn speed_bound(&self) -> f64 {
        self.speed_bound
    }

    /// Declared supremum of |a(t)| (the bound fed to the recovery band).
    pub fn radius_bound(&self) -> f64 {
        self.radius_bound
    }

    /// For sampled paths, the last sample time; closed-form paths have no
    /// limit.
    pub fn span(&self) -> Option<f64> {
        match &self.path {
            OrbitPath::Sampled(s) => Some(s.span()),
            _ => None,
        }
    }

    /// Checks the declared bounds: a(0) = O, speed below `speed_bound`,
    /// excursion below `radius_bound`. Closed-form speeds are known exactly;
    /// positions are additionally probed on `grid` nodes over `horizon`
    /// (sampled paths are probed on their own grid and midpoints).
    pub fn validate(&self, horizon: f64, grid: usize) -> Result<(), ValidationError> {
        if !(self.speed_bound > 0.0 && self.speed_bound < 1.0) {
            return Err(ValidationError::BadSpeedBound(self.speed_bound));
        }
        let start = self.position(0.0).norm();
        if start > 1e-9 * self.radius_bound.max(1.0) {
            return Err(ValidationError::OrbitStart(start));
        }
        match &self.path {
            OrbitPath::Fixed => Ok(()),
            OrbitPath::Linear { velocity } => {
                let speed = velocity.norm();
                if speed > self.speed_bound {
                    return Err(ValidationError::SpeedBound { t: 0.0, speed, bound: self.speed_bound });
                }
                self.check_excursion(horizon, grid)
            }
            OrbitPath::Circular { rho, rate } => {
                let speed = (rho * rate).abs();
                if speed > self.speed_bound {
                    return Err(ValidationError::SpeedBound { t: 0.0, speed, bound: self.speed_bound });
                }
                self.check_excursion(horizon, grid)
            }
            OrbitPath::Sampled(s) => s.validate(self.speed_bound, self.radius_bound),
        }
    }

    fn check_excursion(&self, horizon: f64, grid: usize) -> Result<(), ValidationError> {
        let n = grid.max(2);
        for i in 0..=n {
            let t = horizon * i as f64 / n as f64;
            let r = self.position(t).norm();
            if r > self.radius_bound * (1.0 + 1e-12) {
                return Err(ValidationError::RadiusBound {
                    t,
                    excursion: r,
                    bound: self.radius_bound,
                });
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

/// Positions and velocities on a uniform grid t_k = k dt, interpolated with
/// cubic Hermite segments (C1 globally, exact values and slopes at nodes).
#[derive(Debug, Clone)]
pub struct SampledPath {
    dt: f64,
    positions: Vec<Vec3>,
    velocities: Vec<Vec3>,
}

impl SampledPath {
    pub fn new(dt: f64, positions: Vec<Vec3>, velocities: Vec<Vec3>) -> Result<Self, ValidationError> {
        if dt <= 0.0 || !dt.is_finite() {
            return Err(ValidationError::NonPositiveStep(dt));
        }
        if positions.len() < 2 || positions.len() != velocities.len() {
            return Err(ValidationError::TooFewOrbitSamples(positions.len()));
        }
        for p in positions.iter().chain(velocities.iter()) {
            if !p.is_finite() {
                return Err(ValidationError::NonFinite("sampled orbit"));
            }
        }
        Ok(SampledPath { dt, positions, velocities })
    }

    /// Builds velocities by central differences (one-sided at the ends).
    pub fn from_positions(dt: f64, positions: Vec<Vec3>) -> Result<Self, ValidationError> {
        let n = positions.len();
        if n < 2 {
            return Err(ValidationError::TooFewOrbitSamples(n));
        }
        let mut velocities = Vec::with_capacity(n);
        for k in 0..n {
            let v = if k == 0 {
                (positions[1] - positions[0]) / dt
            } else if k == n - 1 {
                (positions[n - 1] - positions[n - 2]) / dt
            } else {
                (positions[k + 1] - positions[k - 1]) / (2.0 * dt)
            };
            velocities.push(v);
        }
        SampledPath::new(dt, positions, velocities)
    }

    pub fn span(&self) -> f64 {
        self.dt * (self.positions.len() - 1) as f64
    }

    fn segment(&self, t: f64) -> (usize, f64) {
        let span = self.span();
        assert!(
            (-1e-12..=span * (1.0 + 1e-12)).contains(&t),
            "sampled orbit queried at t = {t} outside its span [0, {span}]"
        );
        let k = ((t / self.dt) as usize).min(self.positions.len() - 2);
        let s = (t - k as f64 * self.dt) / self.dt;
        (k, s)
    }

    pub fn position(&self, t: f64) -> Vec3 {
        let (k, s) = self.segment(t);
        let (p0, p1) = (self.positions[k], self.positions[k + 1]);
        let (m0, m1) = (self.velocities[k] * self.dt, self.velocities[k + 1] * self.dt);
        let s2 = s * s;
        let s3 = s2 * s;
        p0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + m0 * (s3 - 2.0 * s2 + s)
            + p1 * (-2.0 * s3 + 3.0 * s2)
            + m1 * (s3 - s2)
    }

    pub fn velocity(&self, t: f64) -> Vec3 {
        let (k, s) = self.segment(t);
        let (p0, p1) = (self.positions[k], self.positions[k + 1]);
        let (m0, m1) = (self.velocities[k] * self.dt, self.velocities[k + 1] * self.dt);
        let s2 = s * s;
        let d = p0 * (6.0 * s2 - 6.0 * s)
            + m0 * (3.0 * s2 - 4.0 * s + 1.0)
            + p1 * (6.0 * s - 6.0 * s2)
            + m1 * (3.0 * s2 - 2.0 * s);
        d / self.dt
    }

    /// Rejects the path if any finite-difference speed estimate reaches 1,
    /// the declared speed bound is exceeded at a node or midpoint, the start
    /// is off the origin, or the excursion leaves the radius bound.
    fn validate(&self, speed_bound: f64, radius_bound: f64) -> Result<(), ValidationError> {
        if self.positions[0].norm() > 1e-9 {
            return Err(ValidationError::OrbitStart(self.positions[0].norm()));
        }
        for k in 0..self.positions.len() - 1 {
            let fd = (self.positions[k + 1] - self.positions[k]).norm() / self.dt;
            let t = k as f64 * self.dt;
            if fd >= 1.0 {
                return Err(ValidationError::SpeedBound { t, speed: fd, bound: 1.0 });
            }
        }
        let n = self.positions.len();
        for k in 0..2 * n - 1 {
            let t = (k as f64 / 2.0) * self.dt;
            let t = t.min(self.span());
            let speed = self.velocity(t).norm();
            if speed > speed_bound * (1.0 + 1e-12) {
                return Err(ValidationError::SpeedBound { t, speed, bound: speed_bound });
            }
            let r = self.position(t).norm();
            if r > radius_bound * (1.0 + 1e-12) {
                return Err(ValidationError::RadiusBound { t, excursion: r, bound: radius_bound });
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn circular_fixture() -> Orbit {
        Orbit::circular(0.3, 1.0, 0.3, 0.7)
    }

    // ---- closed forms ----

    #[test]
    fn circular_orbit_starts_at_origin_with_tangent_velocity() {
        let orbit = circular_fixture();
        assert_eq!(orbit.position(0.0), Vec3::ZERO);
        let v = orbit.velocity(0.0);
        assert!((v - Vec3::new(0.3, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn circular_orbit_speed_is_constant() {
        let orbit = circular_fixture();
        for i in 0..50 {
            let t = 0.13 * i as f64;
            assert!((orbit.velocity(t).norm() - 0.3).abs() < 1e-13);
        }
    }

    #[test]
    fn circular_orbit_validates_against_its_own_bounds() {
        circular_fixture().validate(6.0, 200).expect("fixture is valid");
    }

    #[test]
    fn too_fast_linear_orbit_is_rejected() {
        let orbit = Orbit::linear(Vec3::new(0.9, 0.0, 0.0), 0.5, 0.7);
        assert!(matches!(
            orbit.validate(1.0, 10),
            Err(ValidationError::SpeedBound { .. })
        ));
    }

    #[test]
    fn speed_bound_outside_unit_interval_is_rejected() {
        let orbit = Orbit::fixed(1.0, 0.5);
        assert!(matches!(
            orbit.validate(1.0, 10),
            Err(ValidationError::BadSpeedBound(_))
        ));
    }

    // ---- sampled paths ----

    #[test]
    fn hermite_interpolation_is_exact_at_nodes() {
        let orbit = circular_fixture();
        let dt = 0.05;
        let n = 121;
        let positions: Vec<Vec3> = (0..n).map(|k| orbit.position(k as f64 * dt)).collect();
        let velocities: Vec<Vec3> = (0..n).map(|k| orbit.velocity(k as f64 * dt)).collect();
        let path = SampledPath::new(dt, positions.clone(), velocities).unwrap();
        for (k, p) in positions.iter().enumerate() {
            assert!((path.position(k as f64 * dt) - *p).norm() < 1e-14);
        }
    }

    #[test]
    fn hermite_interpolation_tracks_a_smooth_orbit_between_nodes() {
        let orbit = circular_fixture();
        let dt = 0.05;
        let n = 121;
        let positions: Vec<Vec3> = (0..n).map(|k| orbit.position(k as f64 * dt)).collect();
        let velocities: Vec<Vec3> = (0..n).map(|k| orbit.velocity(k as f64 * dt)).collect();
        let path = SampledPath::new(dt, positions, velocities).unwrap();
        // Hermite with exact slopes is 4th order: expect ~ |a^(4)| dt^4 / 384.
        let mut worst: f64 = 0.0;
        for i in 0..1000 {
            let t = 6.0 * i as f64 / 999.0;
            worst = worst.max((path.position(t) - orbit.position(t)).norm());
        }
        assert!(worst < 1e-7, "interpolation error {worst:.3e}");
    }

    #[test]
    fn sampled_validator_rejects_superluminal_jumps() {
        let dt = 0.1;
        let positions = vec![
            Vec3::ZERO,
            Vec3::new(0.2, 0.0, 0.0), // fd speed 2
            Vec3::new(0.2, 0.0, 0.0),
        ];
        let path = SampledPath::from_positions(dt, positions).unwrap();
        let orbit = Orbit::new(OrbitPath::Sampled(path), 0.9, 0.7);
        assert!(matches!(
            orbit.validate(0.2, 4),
            Err(ValidationError::SpeedBound { .. })
        ));
    }

    #[test]
    fn sampled_validator_rejects_paths_missing_the_origin() {
        let dt = 0.1;
        let positions = vec![Vec3::new(0.05, 0.0, 0.0), Vec3::new(0.06, 0.0, 0.0)];
        let path = SampledPath::from_positions(dt, positions).unwrap();
        let orbit = Orbit::new(OrbitPath::Sampled(path), 0.9, 0.7);
        assert!(matches!(orbit.validate(0.1, 4), Err(ValidationError::OrbitStart(_))));
    }
}
