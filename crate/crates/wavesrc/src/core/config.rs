use super::error::ValidationError;

/// Physical and numerical parameters shared by the pipelines.
///
/// Geometry: receivers live on the sphere of radius `radius` (R); distributed
/// sources are supported in the ball of radius `support_radius` (R0 < R);
/// moving sources stay within `orbit_bound` (R1 < R) of the origin. Emission
/// lasts `duration` (T0) and recordings run to `horizon` (T). Wave speed is
/// normalized to 1, so lengths and times share units.
#[derive(Debug, Clone)]
pub struct Config {
    pub radius: f64,
    pub support_radius: f64,
    pub orbit_bound: f64,
    pub duration: f64,
    pub horizon: f64,
    pub omega: f64,
    // resolutions
    pub time_step: f64,
    pub volume_spacing: f64,
    pub sphere_order: usize,
    pub freq_min: f64,
    pub freq_max: f64,
    pub freq_count: usize,
    // tolerances
    pub root_tol: f64,
    pub cos_floor: f64,
    pub divisor_floor: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            radius: 2.0,
            support_radius: 1.0,
            orbit_bound: 0.7,
            duration: 6.0,
            horizon: 9.0,
            omega: 6.0,
            time_step: 1e-3,
            volume_spacing: 0.05,
            sphere_order: 16,
            freq_min: 0.5,
            freq_max: 20.0,
            freq_count: 40,
            root_tol: 1e-12,
            cos_floor: 1e-2,
            divisor_floor: 1e-8,
        }
    }
}

impl Config {
    fn check_positive(name: &'static str, v: f64) -> Result<(), ValidationError> {
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(ValidationError::BadConfigField {
                field: name,
                value: v,
                rule: "must be finite and positive",
            })
        }
    }

    /// Checks positivity and mutual consistency of the scalar fields.
    pub fn validate(&self) -> Result<(), ValidationError> {
        for (name, v) in [
            ("radius", self.radius),
            ("support_radius", self.support_radius),
            ("orbit_bound", self.orbit_bound),
            ("duration", self.duration),
            ("horizon", self.horizon),
            ("omega", self.omega),
            ("time_step", self.time_step),
            ("volume_spacing", self.volume_spacing),
            ("root_tol", self.root_tol),
            ("cos_floor", self.cos_floor),
            ("divisor_floor", self.divisor_floor),
        ] {
            Self::check_positive(name, v)?;
        }
        if self.support_radius >= self.radius {
            return Err(ValidationError::BadConfigField {
                field: "support_radius",
                value: self.support_radius,
                rule: "must be smaller than radius",
            });
        }
        if self.orbit_bound >= self.radius {
            return Err(ValidationError::BadConfigField {
                field: "orbit_bound",
                value: self.orbit_bound,
                rule: "must be smaller than radius",
            });
        }
        if self.freq_count > 0 && !(self.freq_min > 0.0 && self.freq_max >= self.freq_min) {
            return Err(ValidationError::BadConfigField {
                field: "freq_min",
                value: self.freq_min,
                rule: "frequency band must satisfy 0 < freq_min <= freq_max",
            });
        }
        Ok(())
    }

    /// Orbit recovery integrates distances over [0, duration] from signals
    /// recorded up to `horizon`, which therefore must exceed
    /// duration + radius + orbit_bound so the shifted samples
    /// u(x, t + g(t)) stay inside the recording window.
    pub fn validate_for_orbit_recovery(&self) -> Result<(), ValidationError> {
        self.validate()?;
        let needed = self.duration + self.radius + self.orbit_bound;
        if self.horizon <= needed {
            return Err(ValidationError::WindowTooShort { t: self.horizon, needed });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
