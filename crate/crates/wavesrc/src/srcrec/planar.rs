//! Space-time spectrum samples of slab sources from growing-exponential
//! test functions.
//!
//! A source of the form `F(x, t) = f(x1, x2, t) h(x3)` radiates Cauchy data
//! whose pairing with the test solution
//!
//! ```text
//! phi(x) = e^{i kappa1 (x1 d1 + x2 d2)} e^{mu x3},   mu = sqrt(kappa1^2 - kappa^2)
//! ```
//!
//! (a homogeneous Helmholtz solution whenever `kappa1 > kappa`) factors into
//! the transverse space-time transform of `f` times a one-dimensional weight
//! of `h` against the growing exponential.  Dividing by that weight extracts
//! one transform sample per `(kappa, kappa1, direction)` triple.
//!
//! The exponential reaches `e^{mu R}` on the sphere, so everything is
//! evaluated in the scaled form `e^{mu (x3 - R)} <= 1`; the matching factor
//! is folded into the denominator, and too-ill-conditioned pairs are
//! rejected outright.

use std::sync::Arc;

use num_complex::Complex64;

use super::{CauchyData, MomentError};
use crate::transforms::{KahanComplex, KahanSum};

const UNIT_TOL: f64 = 1e-12;

/// Largest tolerated growth exponent `mu * R`; beyond this the test function
/// spans too many orders of magnitude across the sphere to pair stably.
pub const GROWTH_LIMIT: f64 = 12.0;

// --- axial profile -----------------------------------------------------------

/// The known axial factor `h(x3)` of a slab source, integrable on
/// `[-support, support]` with a fixed trapezoid resolution.
#[derive(Clone)]
pub struct AxialProfile {
    pub h: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub support: f64,
    pub steps: usize,
}

impl AxialProfile {
    pub fn new(h: Arc<dyn Fn(f64) -> f64 + Send + Sync>, support: f64, steps: usize) -> Self {
        assert!(support > 0.0 && steps >= 2, "profile needs positive support and >= 2 steps");
        AxialProfile { h, support, steps }
    }

    /// Indicator of `[-half_width, half_width]`, closed at the endpoints so
    /// the trapezoid rule sees the full cell there.
    pub fn indicator(half_width: f64) -> Self {
        let h = Arc::new(move |s: f64| if s.abs() <= half_width { 1.0 } else { 0.0 });
        AxialProfile::new(h, half_width, 20_000)
    }

    /// Trapezoid pairing `∫ h(s) e^{mu (s - shift)} ds` over the support.
    fn weigh(&self, mu: f64, shift: f64) -> f64 {
        let n = self.steps;
        let dx = 2.0 * self.support / n as f64;
        let mut sum = KahanSum::new();
        for i in 0..=n {
            let s = -self.support + i as f64 * dx;
            let edge = if i == 0 || i == n { 0.5 } else { 1.0 };
            sum.add(edge * (self.h)(s) * (mu * (s - shift)).exp());
        }
        sum.value() * dx
    }
}

impl std::fmt::Debug for AxialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AxialProfile")
            .field("support", &self.support)
            .field("steps", &self.steps)
            .finish()
    }
}

fn growth_exponent(kappa: f64, kappa1: f64) -> Result<f64, MomentError> {
    if !(kappa1.is_finite() && kappa.is_finite() && kappa > 0.0 && kappa1 > kappa) {
        return Err(MomentError::BadFrequencyPair { kappa, kappa1 });
    }
    Ok((kappa1 * kappa1 - kappa * kappa).sqrt())
}

/// Weight of the axial profile against the growing exponential,
/// `∫ h(x3) e^{mu x3} dx3` with `mu = sqrt(kappa1^2 - kappa^2)`.
///
/// # Errors
///
/// [`MomentError::BadFrequencyPair`] unless `kappa1 > kappa > 0`.
pub fn h_weight(profile: &AxialProfile, kappa: f64, kappa1: f64) -> Result<f64, MomentError> {
    let mu = growth_exponent(kappa, kappa1)?;
    Ok(profile.weigh(mu, 0.0))
}

// --- slab moment ----------------------------------------------------------------

/// Extracts one sample of the transverse space-time transform of a slab
/// source from boundary Cauchy data.
///
/// Pairs `data` (at temporal frequency `kappa`) with the scaled test
/// function at spatial frequency `kappa1` along the unit in-plane direction
/// `d_tilde`, then divides by the scaled axial weight of `profile`.  The
/// result equals `F(f)(xi_tilde, kappa)` at `xi_tilde = -kappa1 d_tilde`,
/// where `F` transforms `f(x1, x2, t)` with kernel `e^{-i xi_tilde.x_tilde}
/// e^{-i kappa t}`.
///
/// # Errors
///
/// * [`MomentError::BadFrequencyPair`] unless `kappa1 > kappa`.
/// * [`MomentError::SmallHWeight`] when the growth exponent exceeds
///   [`GROWTH_LIMIT`] or the scaled weight falls below `weight_floor`.
/// * [`MomentError::DirectionNotUnit`] and data validation failures.
pub fn moment_planar(
    data: &CauchyData,
    kappa1: f64,
    d_tilde: [f64; 2],
    profile: &AxialProfile,
    weight_floor: f64,
) -> Result<Complex64, MomentError> {
    data.validate()?;
    let norm = (d_tilde[0] * d_tilde[0] + d_tilde[1] * d_tilde[1]).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(MomentError::DirectionNotUnit(norm));
    }
    let kappa = data.kappa;
    let mu = growth_exponent(kappa, kappa1)?;
    let radius = data.radius;

    let weight = profile.weigh(mu, radius);
    let mu_r = mu * radius;
    if mu_r > GROWTH_LIMIT || weight.abs() < weight_floor {
        return Err(MomentError::SmallHWeight { weight, floor: weight_floor, mu_r });
    }

    let jacobian = radius * radius;
    let mut sum = KahanComplex::new();
    for (k, (node, w)) in data.rule.nodes.iter().zip(&data.rule.weights).enumerate() {
        let x = *node * radius;
        let in_plane = x.x * d_tilde[0] + x.y * d_tilde[1];
        let phi = Complex64::from_polar((mu * (x.z - radius)).exp(), kappa1 * in_plane);
        // d/dn phi = phi * (i kappa1 (d~.x~) + mu x3) / R on the sphere.
        let dphi = phi * Complex64::new(mu * x.z / radius, kappa1 * in_plane / radius);
        let term = data.normal_derivs[k] * phi - data.values[k] * dphi;
        sum.add(term * (w * jacobian));
    }
    Ok(sum.value() / weight)
}

// --- tests -------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::forward::helmholtz_cauchy;
    use crate::core::{SourceSpec, Vec3};
    use crate::transforms::{cylinder_rule, sphere_rule};

    #[test]
    fn indicator_weight_matches_the_closed_form() {
        let profile = AxialProfile::indicator(1.0);
        let (kappa, kappa1): (f64, f64) = (1.0, 1.5);
        let mu = (kappa1 * kappa1 - kappa * kappa).sqrt();
        let expected = 2.0 * mu.sinh() / mu;
        let got = h_weight(&profile, kappa, kappa1).unwrap();
        assert!((got - expected).abs() < 1e-8, "{got} vs {expected}");
    }

    #[test]
    fn linear_profile_weight_matches_the_closed_form() {
        let profile = AxialProfile::new(Arc::new(|s| s), 1.0, 40_000);
        let (kappa, kappa1): (f64, f64) = (1.0, 2.5);
        let mu = (kappa1 * kappa1 - kappa * kappa).sqrt();
        let expected = 2.0 * (mu * mu.cosh() - mu.sinh()) / (mu * mu);
        let got = h_weight(&profile, kappa, kappa1).unwrap();
        assert!((got - expected).abs() < 1e-8, "{got} vs {expected}");
    }

    #[test]
    fn weight_tends_to_the_plain_integral_as_the_pair_degenerates() {
        let profile = AxialProfile::indicator(1.0);
        let kappa = 2.0;
        let got = h_weight(&profile, kappa, kappa * (1.0 + 1e-9)).unwrap();
        assert!((got - 2.0).abs() < 1e-6);
    }

    #[test]
    fn invalid_frequency_pairs_are_rejected() {
        let profile = AxialProfile::indicator(1.0);
        assert!(matches!(
            h_weight(&profile, 2.0, 2.0),
            Err(MomentError::BadFrequencyPair { .. })
        ));
        assert!(matches!(
            h_weight(&profile, -1.0, 2.0),
            Err(MomentError::BadFrequencyPair { .. })
        ));
    }

    /// Cauchy data for the slab source p(x1,x2) * h(x3) with unit temporal
    /// amplitude: a transverse Gaussian inside an indicator slab.
    fn slab_data(kappa: f64, sigma: f64, half_width: f64) -> CauchyData {
        let coeff = -0.5 / (sigma * sigma);
        let f = Arc::new(move |y: Vec3| {
            let transverse = (coeff * (y.x * y.x + y.y * y.y)).exp();
            if y.z.abs() <= half_width {
                transverse
            } else {
                0.0
            }
        });
        let plane_radius = 0.8;
        let support = (plane_radius * plane_radius + half_width * half_width).sqrt() * 1.001;
        let source = SourceSpec::Separable {
            f,
            g: Arc::new(|_t| 0.0),
            radius: support,
            duration: 1.0,
        };
        let sphere = Arc::new(sphere_rule(10).unwrap());
        let volume = cylinder_rule(plane_radius, half_width, 0.03, 50).unwrap();
        helmholtz_cauchy(&source, kappa, Complex64::new(1.0, 0.0), &sphere, 2.0, &volume)
            .unwrap()
    }

    #[test]
    fn slab_moment_recovers_the_transverse_transform() {
        let (kappa, kappa1) = (2.0, 3.0);
        let sigma = 0.15;
        let half_width = 0.5;
        let data = slab_data(kappa, sigma, half_width);
        let profile = AxialProfile::indicator(half_width);
        // Centered transverse Gaussian: transform is real and isotropic.
        let expected = 2.0 * PI * sigma * sigma * (-0.5 * sigma * sigma * kappa1 * kappa1).exp();
        let mut previous_modulus = None;
        for d_tilde in [[1.0, 0.0], [-1.0, 0.0], [0.6, 0.8]] {
            let got = moment_planar(&data, kappa1, d_tilde, &profile, 1e-12).unwrap();
            assert!(
                (got - expected).norm() < 2e-4 * expected,
                "direction {d_tilde:?}: {got} vs {expected}"
            );
            if let Some(prev) = previous_modulus {
                assert!((got.norm() - prev) as f64 <= 1e-8);
            }
            previous_modulus = Some(got.norm());
        }
    }

    #[test]
    fn overgrown_test_functions_are_rejected() {
        let rule = Arc::new(sphere_rule(3).unwrap());
        let n = rule.len();
        let data = CauchyData {
            kappa: 1.0,
            radius: 2.0,
            rule,
            values: vec![Complex64::new(0.0, 0.0); n],
            normal_derivs: vec![Complex64::new(0.0, 0.0); n],
        };
        let profile = AxialProfile::indicator(0.5);
        // mu = sqrt(48) gives mu R about 13.9, past the conditioning limit.
        let err = moment_planar(&data, 7.0, [1.0, 0.0], &profile, 1e-12).unwrap_err();
        assert!(matches!(err, MomentError::SmallHWeight { mu_r, .. } if mu_r > GROWTH_LIMIT));

        // A generous floor trips the small-weight branch at modest growth.
        let err = moment_planar(&data, 1.5, [1.0, 0.0], &profile, 1.0).unwrap_err();
        assert!(matches!(err, MomentError::SmallHWeight { mu_r, .. } if mu_r < GROWTH_LIMIT));
    }
}
