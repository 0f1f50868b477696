//! Frequency-domain radiation: outgoing Helmholtz potentials of a separable
//! source, sampled as Cauchy traces (value and outward normal derivative) on
//! a measurement sphere.
//!
//! For a source density `f` supported strictly inside the sphere, the
//! time-harmonic field at frequency `kappa` driven by a temporal amplitude
//! `g_hat` is the volume potential
//!
//! ```text
//! u(x) = -g_hat * ∫ f(y) e^{i kappa |x-y|} / (4 pi |x-y|) dy,
//! ```
//!
//! discretised over the nodes of a [`VolumeRule`].  Evaluating many
//! frequencies on the same geometry shares all distance computations, so the
//! multi-mode entry point is the one to use for frequency sweeps.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::FieldError;
use crate::core::{SourceSpec, Vec3};
use crate::srcrec::CauchyData;
use crate::transforms::{BlockedComplex, SphereQuadrature, VolumeRule};

// --- phase evaluation plans ------------------------------------------------

/// Strategy for producing `e^{i kappa_m r}` for every requested mode at a
/// shared distance `r`.  Trigonometric calls dominate the kernel cost, so
/// structured frequency grids are reduced to complex-multiply recurrences.
enum PhasePlan {
    /// Every `kappa_m` is an integer multiple of `kappa_0`; one `sincos`
    /// seeds a product chain with `steps[m]` multiplies between modes.
    Harmonic { steps: Vec<usize> },
    /// Uniformly spaced frequencies: two `sincos` calls seed a geometric
    /// recurrence.
    Uniform { first: f64, step: f64 },
    /// Unstructured grid; one `sincos` per mode.
    PerMode,
}

fn plan_phases(kappas: &[f64]) -> PhasePlan {
    if let Some(&base) = kappas.first() {
        let mut multiples = Vec::with_capacity(kappas.len());
        let mut harmonic = base > 0.0;
        for &kappa in kappas {
            let n = (kappa / base).round();
            if n < 1.0 || (kappa - n * base).abs() > 1e-9 * base {
                harmonic = false;
                break;
            }
            multiples.push(n as usize);
        }
        if harmonic && multiples.windows(2).all(|pair| pair[0] < pair[1]) {
            let cap = (4 * kappas.len()).max(64);
            if *multiples.last().unwrap() <= cap {
                let mut steps = Vec::with_capacity(multiples.len());
                let mut previous = 0;
                for &n in &multiples {
                    steps.push(n - previous);
                    previous = n;
                }
                return PhasePlan::Harmonic { steps };
            }
        }
    }
    if kappas.len() >= 2 {
        let step = kappas[1] - kappas[0];
        let uniform = step > 0.0
            && kappas
                .windows(2)
                .all(|pair| ((pair[1] - pair[0]) - step).abs() <= 1e-9 * step);
        if uniform {
            return PhasePlan::Uniform { first: kappas[0], step };
        }
    }
    PhasePlan::PerMode
}

#[inline]
fn fill_phases(plan: &PhasePlan, kappas: &[f64], r: f64, out: &mut [Complex64]) {
    match plan {
        PhasePlan::Harmonic { steps } => {
            let base = Complex64::from_polar(1.0, kappas[0] * r);
            let mut current = Complex64::new(1.0, 0.0);
            for (slot, &count) in out.iter_mut().zip(steps) {
                for _ in 0..count {
                    current *= base;
                }
                *slot = current;
            }
        }
        PhasePlan::Uniform { first, step } => {
            let ratio = Complex64::from_polar(1.0, step * r);
            let mut current = Complex64::from_polar(1.0, first * r);
            for slot in out.iter_mut() {
                *slot = current;
                current *= ratio;
            }
        }
        PhasePlan::PerMode => {
            for (slot, &kappa) in out.iter_mut().zip(kappas) {
                *slot = Complex64::from_polar(1.0, kappa * r);
            }
        }
    }
}

// --- Cauchy-trace synthesis ------------------------------------------------

/// Computes Cauchy traces of the outgoing Helmholtz potential for several
/// frequencies at once.
///
/// Each entry of `modes` is a pair `(kappa, g_hat)`: the wavenumber and the
/// complex temporal amplitude multiplying the spatial density at that
/// frequency.  The returned vector holds one [`CauchyData`] per mode, in the
/// order given, each sampled at the nodes of `sphere` scaled to `radius`.
///
/// Distances between sphere and volume nodes are computed once and shared
/// across all modes, so a 40-frequency sweep costs little more than a single
/// synthesis.  Results do not depend on the number of worker threads.
///
/// # Errors
///
/// * [`FieldError::NotDistributed`] for a moving point source.
/// * [`FieldError::NotSeparable`] for planar or non-radiating sources, whose
///   densities do not factor into a spatial map times one amplitude per
///   frequency.
/// * [`FieldError::SupportTooLarge`] if the source support reaches the
///   measurement sphere.
/// * [`FieldError::BadMode`] for a non-finite or non-positive frequency.
pub fn helmholtz_cauchy_set(
    source: &SourceSpec,
    modes: &[(f64, Complex64)],
    sphere: &Arc<SphereQuadrature>,
    radius: f64,
    volume: &VolumeRule,
) -> Result<Vec<CauchyData>, FieldError> {
    assert!(radius.is_finite() && radius > 0.0, "sphere radius must be positive");

    let (f, support) = match source {
        SourceSpec::Separable { f, radius, .. } => (f, *radius),
        SourceSpec::MovingPoint { .. } => {
            return Err(FieldError::NotDistributed { op: "helmholtz_cauchy" })
        }
        _ => return Err(FieldError::NotSeparable { op: "helmholtz_cauchy" }),
    };
    if support >= radius {
        return Err(FieldError::SupportTooLarge { support, radius });
    }
    for &(kappa, _) in modes {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(FieldError::BadMode(kappa));
        }
    }

    // Compact the quadrature to nodes where the weighted density is nonzero;
    // smooth bumps and truncated Gaussians leave most of a bounding ball
    // empty, and the kernel cost is linear in the retained nodes.
    let mut points: Vec<Vec3> = Vec::new();
    let mut weighted: Vec<f64> = Vec::new();
    for (y, w) in volume.nodes.iter().zip(&volume.weights) {
        if y.norm() < support {
            let value = w * f(*y);
            if value != 0.0 {
                points.push(*y);
                weighted.push(value);
            }
        }
    }

    let kappas: Vec<f64> = modes.iter().map(|mode| mode.0).collect();
    let plan = plan_phases(&kappas);
    let mode_count = modes.len();

    // One column of (values, normal derivatives) per sphere node.  The
    // parallel collect preserves node order, so output is deterministic.
    let columns: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..sphere.nodes.len())
        .into_par_iter()
        .map(|j| {
            let dir = sphere.nodes[j];
            let x = dir * radius;
            let mut s_value = vec![BlockedComplex::new(); mode_count];
            let mut s_angle = vec![BlockedComplex::new(); mode_count];
            let mut s_curv = vec![BlockedComplex::new(); mode_count];
            let mut phases = vec![Complex64::new(0.0, 0.0); mode_count];
            for (y, wf) in points.iter().zip(&weighted) {
                let offset = x - *y;
                let r = offset.norm();
                let inv_r = 1.0 / r;
                // Cosine between the ray y -> x and the outward normal at x.
                let cosine = offset.dot(dir) * inv_r;
                let kernel = wf * inv_r * (0.25 / PI);
                let kernel_c = kernel * cosine;
                let kernel_cr = kernel_c * inv_r;
                fill_phases(&plan, &kappas, r, &mut phases);
                for m in 0..mode_count {
                    let phase = phases[m];
                    s_value[m].add(phase * kernel);
                    s_angle[m].add(phase * kernel_c);
                    s_curv[m].add(phase * kernel_cr);
                }
            }
            let mut values = Vec::with_capacity(mode_count);
            let mut derivs = Vec::with_capacity(mode_count);
            for m in 0..mode_count {
                let (kappa, g_hat) = modes[m];
                let scale = -g_hat;
                values.push(scale * s_value[m].value());
                let ik = Complex64::new(0.0, kappa);
                derivs.push(scale * (ik * s_angle[m].value() - s_curv[m].value()));
            }
            (values, derivs)
        })
        .collect();

    let mut out = Vec::with_capacity(mode_count);
    for (m, &(kappa, _)) in modes.iter().enumerate() {
        let mut values = Vec::with_capacity(columns.len());
        let mut normal_derivs = Vec::with_capacity(columns.len());
        for column in &columns {
            values.push(column.0[m]);
            normal_derivs.push(column.1[m]);
        }
        out.push(CauchyData {
            kappa,
            radius,
            rule: Arc::clone(sphere),
            values,
            normal_derivs,
        });
    }
    Ok(out)
}

/// Single-frequency convenience wrapper around [`helmholtz_cauchy_set`].
pub fn helmholtz_cauchy(
    source: &SourceSpec,
    kappa: f64,
    g_hat: Complex64,
    sphere: &Arc<SphereQuadrature>,
    radius: f64,
    volume: &VolumeRule,
) -> Result<CauchyData, FieldError> {
    let mut set = helmholtz_cauchy_set(source, &[(kappa, g_hat)], sphere, radius, volume)?;
    Ok(set.pop().expect("one mode in, one trace out"))
}

// --- tests ------------------------------------------------------------------
