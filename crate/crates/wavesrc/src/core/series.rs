use super::error::ValidationError;
use super::vec3::Vec3;

/// A uniformly sampled scalar signal recorded at one receiver position.
///
/// Sample `k` holds the value at `t0 + k * dt`. When the signal has a known
/// wavefront arrival (a receiver listening to a source switched on at t = 0),
/// `first_arrival` records that time so downstream interpolation can treat
/// everything before it as exactly zero instead of smoothing over the jump.
#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub receiver: Vec3,
    pub t0: f64,
    pub dt: f64,
    pub samples: Vec<f64>,
    /// Time before which the signal is identically zero, if known.
    pub first_arrival: Option<f64>,
}

impl TimeSeries {
    pub fn new(receiver: Vec3, t0: f64, dt: f64, samples: Vec<f64>) -> Result<Self, ValidationError> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(ValidationError::NonPositiveStep(dt));
        }
        if samples.len() < 2 {
            return Err(ValidationError::TooFewSamples(samples.len()));
        }
        if !t0.is_finite() || samples.iter().any(|s| !s.is_finite()) {
            return Err(ValidationError::NonFinite("time series"));
        }
        Ok(TimeSeries { receiver, t0, dt, samples, first_arrival: None })
    }

    pub fn with_first_arrival(mut self, arrival: f64) -> Self {
        self.first_arrival = Some(arrival);
        self
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Time of sample `k`.
    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    /// Time of the last sample.
    pub fn t_end(&self) -> f64 {
        self.time(self.samples.len() - 1)
    }

    /// True when the sample grid covers the closed interval [a, b].
    pub fn covers(&self, a: f64, b: f64) -> bool {
        let slack = 1e-9 * self.dt.max(1.0);
        self.t0 <= a + slack && self.t_end() >= b - slack
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn series(t0: f64, dt: f64, n: usize) -> TimeSeries {
        TimeSeries::new(Vec3::new(2.0, 0.0, 0.0), t0, dt, vec![0.0; n]).unwrap()
    }

    #[test]
    fn rejects_bad_steps_and_short_signals() {
        assert!(matches!(
            TimeSeries::new(Vec3::ZERO, 0.0, 0.0, vec![0.0, 1.0]),
            Err(ValidationError::NonPositiveStep(_))
        ));
        assert!(matches!(
            TimeSeries::new(Vec3::ZERO, 0.0, 0.1, vec![0.0]),
            Err(ValidationError::TooFewSamples(1))
        ));
        assert!(matches!(
            TimeSeries::new(Vec3::ZERO, 0.0, 0.1, vec![0.0, f64::NAN]),
            Err(ValidationError::NonFinite(_))
        ));
    }

    #[test]
    fn time_grid_and_coverage() {
        let s = series(1.0, 0.25, 9);
        assert_eq!(s.time(0), 1.0);
        assert_eq!(s.time(8), 3.0);
        assert!((s.t_end() - 3.0).abs() < 1e-15);
        assert!(s.covers(1.0, 3.0));
        assert!(s.covers(1.5, 2.5));
        assert!(!s.covers(0.5, 2.0));
        assert!(!s.covers(1.5, 3.5));
    }

    #[test]
    fn first_arrival_is_opt_in_metadata() {
        let s = series(0.0, 0.1, 5);
        assert_eq!(s.first_arrival, None);
        let s = s.with_first_arrival(2.0);
        assert_eq!(s.first_arrival, Some(2.0));
    }
}
