//! Frequency grids for multi-frequency probing.

use super::TransformError;

/// Strictly increasing positive probing frequencies, with an optional
/// band limit used by reconstruction (defaults to the largest grid value).
/// Zero is never a member: test functions and kernels degenerate there.
#[derive(Debug, Clone)]
pub struct FrequencyGrid {
    values: Vec<f64>,
    pub kappa_max: Option<f64>,
}

impl FrequencyGrid {
    pub fn new(values: Vec<f64>) -> Result<Self, TransformError> {
        if values.is_empty() {
            return Err(TransformError::BadFrequencyGrid("grid is empty"));
        }
        if values.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(TransformError::BadFrequencyGrid(
                "all frequencies must be finite and positive",
            ));
        }
        if values.windows(2).any(|p| p[0] >= p[1]) {
            return Err(TransformError::BadFrequencyGrid(
                "frequencies must be strictly increasing",
            ));
        }
        Ok(FrequencyGrid { values, kappa_max: None })
    }

    /// `count` equally spaced frequencies from `min` to `max` inclusive.
    pub fn uniform(min: f64, max: f64, count: usize) -> Result<Self, TransformError> {
        if count == 0 {
            return Err(TransformError::BadFrequencyGrid("grid is empty"));
        }
        if count == 1 {
            return FrequencyGrid::new(vec![min]);
        }
        let step = (max - min) / (count - 1) as f64;
        FrequencyGrid::new((0..count).map(|m| min + m as f64 * step).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Effective band limit for reconstruction.
    pub fn band_limit(&self) -> f64 {
        self.kappa_max.unwrap_or(*self.values.last().unwrap())
    }
}

// ---------------------------------------------------------------------------
