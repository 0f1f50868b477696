//! Product quadrature on the unit sphere.

use std::f64::consts::PI;

use super::gauss::gauss_legendre;
use super::kahan::{KahanComplex, KahanSum};
use super::TransformError;
use crate::core::Vec3;
use num_complex::Complex64;

/// Quadrature rule on the unit sphere: Gauss–Legendre in the polar cosine
/// (`order` nodes) times a uniform grid in azimuth (`2 * order` nodes).
/// Weights are strictly positive and sum to 4 pi; the rule integrates
/// spherical polynomials well past the declared order.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    pub nodes: Vec<Vec3>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl SphereQuadrature {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Deterministic fixed-order reduction of a real integrand over the unit
    /// sphere.
    pub fn integrate(&self, f: impl Fn(Vec3) -> f64) -> f64 {
        let mut acc = KahanSum::new();
        for (node, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(*node));
        }
        acc.value()
    }

    /// Complex counterpart of [`SphereQuadrature::integrate`].
    pub fn integrate_complex(&self, f: impl Fn(Vec3) -> Complex64) -> Complex64 {
        let mut acc = KahanComplex::new();
        for (node, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(*node) * *w);
        }
        acc.value()
    }
}

/// Builds the product rule of the given order (>= 2). Node count is
/// `2 * order^2`.
pub fn sphere_rule(order: usize) -> Result<SphereQuadrature, TransformError> {
    if order < 2 {
        return Err(TransformError::OrderTooSmall(order));
    }
    let (polar, polar_w) = gauss_legendre(order);
    let m = 2 * order;
    let azimuth_w = 2.0 * PI / m as f64;
    let mut nodes = Vec::with_capacity(order * m);
    let mut weights = Vec::with_capacity(order * m);
    for (ct, wp) in polar.iter().zip(&polar_w) {
        let st = (1.0 - ct * ct).max(0.0).sqrt();
        for j in 0..m {
            let phi = 2.0 * PI * j as f64 / m as f64;
            nodes.push(Vec3::new(st * phi.cos(), st * phi.sin(), *ct));
            weights.push(wp * azimuth_w);
        }
    }
    Ok(SphereQuadrature { nodes, weights, order })
}

// ---------------------------------------------------------------------------
