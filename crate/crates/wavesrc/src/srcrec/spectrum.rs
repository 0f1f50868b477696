//! Polar Fourier spectra assembled from boundary moments, and band-limited
//! inverse synthesis back to physical space.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::moments::moment_3d;
use super::{CauchyData, MomentError};
use crate::core::Vec3;
use crate::transforms::{KahanComplex, SphereQuadrature};

// --- polar spectrum ----------------------------------------------------------

/// Samples of a spatial Fourier transform `f_hat` on a polar grid: a set of
/// frequencies times a spherical direction rule.
///
/// Entry `(m, j)` holds `f_hat(kappas[m] * directions.nodes[j])` in row-major
/// order.  `mask` is `true` where the entry is usable; extraction leaves an
/// entry masked off when the temporal amplitude it divides by is too small,
/// and inversion treats such entries as zero.
#[derive(Debug, Clone)]
pub struct PolarSpectrum {
    pub kappas: Vec<f64>,
    pub directions: Arc<SphereQuadrature>,
    pub values: Vec<Complex64>,
    pub mask: Vec<bool>,
}

impl PolarSpectrum {
    pub fn validate(&self) -> Result<(), MomentError> {
        let expected = self.kappas.len() * self.directions.len();
        if self.values.len() != expected || self.mask.len() != expected {
            return Err(MomentError::MismatchedData {
                values: self.values.len(),
                derivs: self.mask.len(),
                nodes: expected,
            });
        }
        for pair in self.kappas.windows(2) {
            if !(pair[1] > pair[0]) {
                return Err(MomentError::BadKappa(pair[1]));
            }
        }
        match self.kappas.first() {
            Some(&first) if first.is_finite() && first > 0.0 => Ok(()),
            Some(&first) => Err(MomentError::BadKappa(first)),
            None => Err(MomentError::EmptySpectrum),
        }
    }

    /// Highest frequency carried by the grid.
    pub fn kappa_max(&self) -> f64 {
        self.kappas.last().copied().unwrap_or(0.0)
    }

    /// Row-major index of frequency `m`, direction `j`.
    pub fn index(&self, m: usize, j: usize) -> usize {
        m * self.directions.len() + j
    }

    /// The sub-spectrum of all frequencies `<= kappa_max`, for truncation
    /// studies on one extracted data set.
    pub fn restricted(&self, kappa_max: f64) -> PolarSpectrum {
        let keep = self.kappas.iter().take_while(|&&k| k <= kappa_max).count();
        let entries = keep * self.directions.len();
        PolarSpectrum {
            kappas: self.kappas[..keep].to_vec(),
            directions: Arc::clone(&self.directions),
            values: self.values[..entries].to_vec(),
            mask: self.mask[..entries].to_vec(),
        }
    }
}

// --- extraction ---------------------------------------------------------------

/// Divides plane-wave moments by the temporal amplitude to obtain spectrum
/// samples `f_hat(kappa d)` for every data frequency and direction node.
///
/// `g_hat` supplies the temporal amplitude at each data frequency; rows where
/// `|g_hat| < g_tol` are masked off rather than divided.  The moment of data
/// at frequency `kappa` against direction `-d` pairs with `f_hat(+kappa d)`,
/// which is the orientation stored.
///
/// # Errors
///
/// Propagates data validation failures; frequencies must be strictly
/// increasing across `data`.
pub fn recover_spectrum_3d(
    data: &[CauchyData],
    directions: &Arc<SphereQuadrature>,
    g_hat: &(dyn Fn(f64) -> Complex64 + Sync),
    g_tol: f64,
) -> Result<PolarSpectrum, MomentError> {
    for set in data {
        set.validate()?;
    }
    for pair in data.windows(2) {
        if !(pair[1].kappa > pair[0].kappa) {
            return Err(MomentError::BadKappa(pair[1].kappa));
        }
    }

    let dir_count = directions.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut values = vec![zero; data.len() * dir_count];
    let mut mask = vec![false; data.len() * dir_count];
    for (m, set) in data.iter().enumerate() {
        let amplitude = g_hat(set.kappa);
        if amplitude.norm() < g_tol {
            continue;
        }
        let row: Result<Vec<Complex64>, MomentError> = directions
            .nodes
            .par_iter()
            .map(|d| Ok(moment_3d(set, -*d)? / amplitude))
            .collect();
        let row = row?;
        let base = m * dir_count;
        values[base..base + dir_count].copy_from_slice(&row);
        mask[base..base + dir_count].fill(true);
    }

    Ok(PolarSpectrum {
        kappas: data.iter().map(|set| set.kappa).collect(),
        directions: Arc::clone(directions),
        values,
        mask,
    })
}

// --- band-limited inversion ----------------------------------------------------

/// Inverse Fourier synthesis of a polar spectrum at the given points:
///
/// ```text
/// f_rec(x) = (2 pi)^-3 ∫_{|xi| <= kappa_max} f_hat(xi) e^{i xi.x} dxi,
/// ```
///
/// evaluated as a trapezoid rule in frequency (with a virtual node at
/// `kappa = 0`, where the `kappa^2` Jacobian kills the integrand) times the
/// spectrum's own direction rule.  Masked entries contribute zero.  Returns
/// the real part of the synthesis at each point, in input order, computed
/// identically for any number of worker threads.
///
/// # Errors
///
/// [`MomentError::EmptySpectrum`] when fewer than two frequencies are
/// available, plus spectrum validation failures.
pub fn invert_bandlimited(
    spectrum: &PolarSpectrum,
    points: &[Vec3],
) -> Result<Vec<f64>, MomentError> {
    spectrum.validate()?;
    if spectrum.kappas.len() < 2 {
        return Err(MomentError::EmptySpectrum);
    }

    let kappas = &spectrum.kappas;
    let freq_count = kappas.len();
    let dir_count = spectrum.directions.len();

    // Trapezoid weight times kappa^2 Jacobian for each frequency node.
    let mut radial = vec![0.0; freq_count];
    for m in 0..freq_count {
        let left = if m == 0 { 0.0 } else { kappas[m - 1] };
        let right = if m + 1 == freq_count { kappas[m] } else { kappas[m + 1] };
        radial[m] = 0.5 * (right - left) * kappas[m] * kappas[m];
    }

    // Fold frequency weights, direction weights, and the mask into one term
    // table so the point loop is branch-free.
    let mut terms = vec![Complex64::new(0.0, 0.0); spectrum.values.len()];
    for m in 0..freq_count {
        for j in 0..dir_count {
            let idx = m * dir_count + j;
            if spectrum.mask[idx] {
                terms[idx] =
                    spectrum.values[idx] * (radial[m] * spectrum.directions.weights[j]);
            }
        }
    }

    // On a uniformly spaced frequency grid the phases along one direction
    // form a geometric sequence; replace per-term sincos with a recurrence.
    let step = kappas[1] - kappas[0];
    let uniform = kappas
        .windows(2)
        .all(|pair| ((pair[1] - pair[0]) - step).abs() <= 1e-9 * step);

    let scale = 1.0 / (8.0 * PI * PI * PI);
    let field: Vec<f64> = points
        .par_iter()
        .map(|x| {
            let mut sum = KahanComplex::new();
            for (j, d) in spectrum.directions.nodes.iter().enumerate() {
                let dot = d.dot(*x);
                if uniform {
                    let ratio = Complex64::from_polar(1.0, step * dot);
                    let mut phase = Complex64::from_polar(1.0, kappas[0] * dot);
                    for m in 0..freq_count {
                        sum.add(terms[m * dir_count + j] * phase);
                        phase *= ratio;
                    }
                } else {
                    for m in 0..freq_count {
                        let phase = Complex64::from_polar(1.0, kappas[m] * dot);
                        sum.add(terms[m * dir_count + j] * phase);
                    }
                }
            }
            scale * sum.value().re
        })
        .collect();
    Ok(field)
}

// --- tests --------------------------------------------------------------------
