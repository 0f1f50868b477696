//! Fourier and Laplace transforms of uniformly sampled signals.
//!
//! Both are composite trapezoid rules over the sample grid — frequency
//! grids here are small and arbitrary, not tied to FFT bins, and direct
//! evaluation avoids regridding error. The caller is responsible for the
//! grid covering the support of the signal.

use super::kahan::{KahanComplex, KahanSum};
use super::TransformError;
use crate::core::TimeSeries;
use num_complex::Complex64;

/// Trapezoid approximation of the time Fourier transform
/// integral u(t) e^(-i kappa t) dt over the sampled window, kappa >= 0.
pub fn dft_time(series: &TimeSeries, kappa: f64) -> Result<Complex64, TransformError> {
    if series.samples.is_empty() {
        return Err(TransformError::EmptySeries);
    }
    if !(kappa >= 0.0) {
        return Err(TransformError::NegativeFrequency(kappa));
    }
    if series.samples.len() == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let n = series.samples.len();
    // phase recurrence: e^(-i kappa t_k) = e^(-i kappa t0) * r^k with
    // r = e^(-i kappa dt); one sincos pair total instead of one per sample.
    let rot = Complex64::from_polar(1.0, -kappa * series.dt);
    let mut phase = Complex64::from_polar(1.0, -kappa * series.t0);
    let mut acc = KahanComplex::new();
    for (k, &u) in series.samples.iter().enumerate() {
        let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        acc.add(phase * (u * w));
        phase *= rot;
    }
    Ok(acc.value() * series.dt)
}

/// Trapezoid approximation of the Laplace transform
/// integral u(t) e^(-s t) dt over the sampled window, s > 0. Real-valued
/// diagnostic counterpart of [`dft_time`].
pub fn laplace_time(series: &TimeSeries, s: f64) -> Result<f64, TransformError> {
    if series.samples.is_empty() {
        return Err(TransformError::EmptySeries);
    }
    if !(s > 0.0) {
        return Err(TransformError::NonPositiveS(s));
    }
    if series.samples.len() == 1 {
        return Ok(0.0);
    }
    let n = series.samples.len();
    let decay = (-s * series.dt).exp();
    let mut damp = (-s * series.t0).exp();
    let mut acc = KahanSum::new();
    for (k, &u) in series.samples.iter().enumerate() {
        let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        acc.add(u * w * damp);
        damp *= decay;
    }
    Ok(acc.value() * series.dt)
}

// ---------------------------------------------------------------------------
