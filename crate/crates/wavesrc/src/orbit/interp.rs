//! Continuous evaluation of sampled receiver signals.
//!
//! The distance ODE queries the measured signal at echo times t + g(t) that
//! fall between samples.  A four-point Lagrange cubic on the uniform grid
//! reproduces cubics exactly, so on smooth signals the interpolation error
//! is O(dt^4) — matching the integrator's own order, which keeps step-halving
//! studies clean.  The stencil never spans the arrival jump: samples before
//! the recorded first arrival are dropped, and queries there return the
//! exact pre-arrival value, zero.

use super::OrbitError;
use crate::core::TimeSeries;

/// Cubic interpolant of one receiver series, zero before the arrival time.
#[derive(Debug, Clone)]
pub struct SignalInterpolant {
    start: f64,
    dt: f64,
    samples: Vec<f64>,
    arrival: f64,
}

impl SignalInterpolant {
    /// Builds the interpolant on the post-arrival part of the series.
    ///
    /// # Errors
    ///
    /// [`OrbitError::TooShort`] when fewer than four samples lie at or past
    /// the series' recorded first arrival (or its start, if none).
    pub fn new(series: &TimeSeries) -> Result<Self, OrbitError> {
        let arrival = series.first_arrival.unwrap_or(series.t0);
        let first = if arrival <= series.t0 {
            0
        } else {
            ((arrival - series.t0) / series.dt - 1e-9).ceil() as usize
        };
        let tail = series.samples.len().saturating_sub(first);
        if tail < 4 {
            return Err(OrbitError::TooShort { found: tail });
        }
        Ok(SignalInterpolant {
            start: series.time(first),
            dt: series.dt,
            samples: series.samples[first..].to_vec(),
            arrival,
        })
    }

    /// Time of the last usable sample.
    pub fn end(&self) -> f64 {
        self.start + (self.samples.len() - 1) as f64 * self.dt
    }

    /// Signal value at time `t`: zero strictly before the arrival, the
    /// Lagrange cubic through the four nearest samples otherwise.  Exact at
    /// sample times.  Queries past the last sample (tolerated only within
    /// coverage slack) continue the final cubic.
    pub fn evaluate(&self, t: f64) -> f64 {
        if t < self.arrival {
            return 0.0;
        }
        let n = self.samples.len();
        let x = (t - self.start) / self.dt;
        // Snap queries that are a rounding error away from a sample time:
        // grid-aligned callers then see the samples bit-for-bit.
        let nearest = x.round();
        if (x - nearest).abs() < 1e-9 && nearest >= 0.0 && nearest < n as f64 {
            return self.samples[nearest as usize];
        }
        let interval = (x.floor() as isize).clamp(0, n as isize - 2) as usize;
        let lo = interval.saturating_sub(1).min(n - 4);
        let s = x - lo as f64;
        let y = &self.samples[lo..lo + 4];
        // Lagrange basis on local nodes 0, 1, 2, 3.
        let l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
        let l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
        let l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
        let l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
        y[0] * l0 + y[1] * l1 + y[2] * l2 + y[3] * l3
    }
}

// --- tests -------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::Vec3;

    /// cos(t - 2) switched on at t = 2, sampled like a static-source record.
    fn switched_cosine(dt: f64, n: usize) -> TimeSeries {
        let samples: Vec<f64> = (0..n)
            .map(|k| {
                let t = k as f64 * dt;
                if t >= 2.0 {
                    (t - 2.0).cos()
                } else {
                    0.0
                }
            })
            .collect();
        TimeSeries::new(Vec3::new(2.0, 0.0, 0.0), 0.0, dt, samples)
            .unwrap()
            .with_first_arrival(2.0)
    }

    #[test]
    fn sample_times_reproduce_the_samples_exactly() {
        let series = switched_cosine(1e-3, 6001);
        let interp = SignalInterpolant::new(&series).unwrap();
        for k in [2000usize, 2001, 3500, 5999, 6000] {
            let t = series.time(k);
            assert_eq!(interp.evaluate(t), series.samples[k], "node {k}");
        }
    }

    #[test]
    fn off_grid_queries_match_the_closed_form() {
        let series = switched_cosine(1e-3, 6001);
        let interp = SignalInterpolant::new(&series).unwrap();
        // Interior, one-sided start stencil, and end-of-grid queries.
        for t in [5.0005, 2.0005, 2.0001, 5.99995, 3.1417] {
            let expected = (t - 2.0_f64).cos();
            assert!(
                (interp.evaluate(t) - expected).abs() < 1e-10,
                "query at {t}"
            );
        }
    }

    #[test]
    fn queries_before_the_arrival_are_zero() {
        let series = switched_cosine(1e-3, 6001);
        let interp = SignalInterpolant::new(&series).unwrap();
        assert_eq!(interp.evaluate(0.5), 0.0);
        assert_eq!(interp.evaluate(1.999_999), 0.0);
        // At the arrival itself the recorded right-limit sample wins.
        assert!((interp.evaluate(2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_post_arrival_samples_are_rejected() {
        let series = TimeSeries::new(Vec3::new(2.0, 0.0, 0.0), 0.0, 1.0, vec![0.0; 5])
            .unwrap()
            .with_first_arrival(2.5);
        let err = SignalInterpolant::new(&series).unwrap_err();
        assert_eq!(err, OrbitError::TooShort { found: 2 });
    }
}
