//! Plane-wave Green-identity moments of boundary Cauchy data.
//!
//! The test function `phi = e^{i kappa x.d}` solves the homogeneous
//! Helmholtz equation, so pairing it with the Cauchy traces of a radiated
//! field over the measurement sphere,
//!
//! ```text
//! M(kappa, d) = ∮ (du/dn * phi - u * dphi/dn) dS,
//! ```
//!
//! collapses by the Green identity to `g_hat(kappa) * f_hat(-kappa d)`,
//! where `f_hat(xi) = ∫ f(x) e^{-i xi.x} dx` is the spatial transform of
//! the source density.  Each moment is one Fourier sample of the hidden
//! source, read off the boundary without ever solving an interior problem.

use num_complex::Complex64;

use super::{CauchyData, MomentError};
use crate::core::Vec3;
use crate::transforms::KahanComplex;

const UNIT_TOL: f64 = 1e-12;

/// Pairs one Cauchy data set with the plane-wave test `e^{i kappa x.d}`.
///
/// Returns the boundary functional above, equal (up to quadrature error) to
/// `g_hat(kappa) * f_hat(-kappa d)` for the source that radiated the data.
///
/// # Errors
///
/// [`MomentError::DirectionNotUnit`] unless `|d| = 1` within `1e-12`, plus
/// any defect reported by [`CauchyData::validate`].
pub fn moment_3d(data: &CauchyData, direction: Vec3) -> Result<Complex64, MomentError> {
    data.validate()?;
    let norm = direction.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(MomentError::DirectionNotUnit(norm));
    }

    let kappa = data.kappa;
    let jacobian = data.radius * data.radius;
    let mut sum = KahanComplex::new();
    for (k, (node, w)) in data.rule.nodes.iter().zip(&data.rule.weights).enumerate() {
        let x = *node * data.radius;
        let phi = Complex64::from_polar(1.0, kappa * x.dot(direction));
        // Outward normal on the sphere is the node direction itself.
        let dphi = Complex64::new(0.0, kappa * node.dot(direction)) * phi;
        let term = data.normal_derivs[k] * phi - data.values[k] * dphi;
        sum.add(term * (w * jacobian));
    }
    Ok(sum.value())
}

// --- tests ------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::forward::helmholtz_cauchy;
    use crate::core::SourceSpec;
    use crate::transforms::{ball_rule, sphere_rule, BlockedComplex, VolumeRule};

    const SIGMA: f64 = 0.2;

    fn gaussian(center: Vec3, support: f64) -> SourceSpec {
        let coeff = -0.5 / (SIGMA * SIGMA);
        SourceSpec::Separable {
            f: Arc::new(move |y: Vec3| (coeff * (y - center).norm_sq()).exp()),
            g: Arc::new(|_t| 0.0),
            radius: support,
            duration: 1.0,
        }
    }

    /// f_hat(xi) for the centered Gaussian, shifted by `center`.
    fn gaussian_transform(xi: Vec3, center: Vec3) -> Complex64 {
        let modulus = (2.0 * std::f64::consts::PI * SIGMA * SIGMA).powf(1.5)
            * (-0.5 * SIGMA * SIGMA * xi.norm_sq()).exp();
        Complex64::from_polar(modulus, -xi.dot(center))
    }

    fn synthesize(
        source: &SourceSpec,
        kappa: f64,
        g_hat: Complex64,
        volume: &VolumeRule,
    ) -> CauchyData {
        let sphere = Arc::new(sphere_rule(12).unwrap());
        helmholtz_cauchy(source, kappa, g_hat, &sphere, 2.0, volume).unwrap()
    }

    #[test]
    fn zero_data_gives_zero_moment() {
        let rule = Arc::new(sphere_rule(4).unwrap());
        let n = rule.len();
        let data = CauchyData {
            kappa: 2.0,
            radius: 2.0,
            rule,
            values: vec![Complex64::new(0.0, 0.0); n],
            normal_derivs: vec![Complex64::new(0.0, 0.0); n],
        };
        let m = moment_3d(&data, Vec3::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(m, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn non_unit_directions_are_rejected() {
        let rule = Arc::new(sphere_rule(3).unwrap());
        let n = rule.len();
        let data = CauchyData {
            kappa: 1.0,
            radius: 2.0,
            rule,
            values: vec![Complex64::new(0.0, 0.0); n],
            normal_derivs: vec![Complex64::new(0.0, 0.0); n],
        };
        let err = moment_3d(&data, Vec3::new(1.0, 1.0, 0.0)).unwrap_err();
        assert!(matches!(err, MomentError::DirectionNotUnit(_)));
    }

    #[test]
    fn gaussian_moment_matches_the_closed_form_transform() {
        let source = gaussian(Vec3::ZERO, 1.1);
        let volume = ball_rule(1.1, 0.06).unwrap();
        let g_hat = Complex64::new(1.0, 0.0);
        let data = synthesize(&source, 2.0, g_hat, &volume);
        let directions = [
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 1.0).normalized(),
            Vec3::new(0.3, -0.8, 0.52).normalized(),
        ];
        for d in directions {
            let moment = moment_3d(&data, d).unwrap();
            let expected = gaussian_transform(d * (-data.kappa), Vec3::ZERO);
            assert!(
                (moment - expected).norm() < 1e-6,
                "moment {moment} vs transform {expected}"
            );
        }
    }

    #[test]
    fn moment_agrees_with_direct_volume_pairing() {
        // The discrete Green identity: pairing the synthesized traces with
        // the plane wave must reproduce the volume pairing of f with the
        // same test function on the same nodes, up to sphere-rule error
        // alone.  This pins signs and normal conventions end to end.
        let source = gaussian(Vec3::ZERO, 1.1);
        let volume = ball_rule(1.1, 0.06).unwrap();
        let g_hat = Complex64::new(0.3, -0.7);
        let f = match &source {
            SourceSpec::Separable { f, .. } => Arc::clone(f),
            _ => unreachable!(),
        };
        for kappa in [1.0, 3.0] {
            let data = synthesize(&source, kappa, g_hat, &volume);
            for d in [Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.6, 0.8, 0.0)] {
                let moment = moment_3d(&data, d).unwrap();
                let mut pairing = BlockedComplex::new();
                for (y, w) in volume.nodes.iter().zip(&volume.weights) {
                    let phi = Complex64::from_polar(1.0, kappa * y.dot(d));
                    pairing.add(phi * (w * f(*y)));
                }
                let expected = g_hat * pairing.value();
                assert!(
                    (moment - expected).norm() < 1e-8,
                    "kappa {kappa}: moment {moment} vs volume pairing {expected}"
                );
            }
        }
    }

    #[test]
    fn shifting_the_source_shifts_only_the_phase() {
        let center = Vec3::new(0.3, 0.0, 0.0);
        let volume = ball_rule(1.4, 0.06).unwrap();
        let g_hat = Complex64::new(1.0, 0.0);
        let kappa = 2.0;
        let d = Vec3::new(0.8, 0.6, 0.0);
        let centered = synthesize(&gaussian(Vec3::ZERO, 1.4), kappa, g_hat, &volume);
        let shifted = synthesize(&gaussian(center, 1.4), kappa, g_hat, &volume);
        let m0 = moment_3d(&centered, d).unwrap();
        let m1 = moment_3d(&shifted, d).unwrap();
        assert!((m0.norm() - m1.norm()).abs() < 1e-8);
        let expected_phase = Complex64::from_polar(1.0, kappa * d.dot(center));
        assert!((m1 / m0 - expected_phase).norm() < 1e-6);
    }
}
