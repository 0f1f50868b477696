//! Midpoint quadrature on uniform Cartesian grids restricted to balls and
//! cylinders.

use super::kahan::{BlockedComplex, BlockedSum};
use super::TransformError;
use crate::core::Vec3;
use num_complex::Complex64;

/// Midpoint rule over a solid region: cell centers of a uniform Cartesian
/// grid that fall strictly inside the region, each carrying the cell volume
/// as weight. The grid is centered so that cell centers come in +/- mirror
/// pairs along every axis, which makes odd integrands vanish exactly.
#[derive(Debug, Clone)]
pub struct VolumeRule {
    pub nodes: Vec<Vec3>,
    pub weights: Vec<f64>,
    /// Largest cell edge, used by singularity-exclusion checks.
    pub spacing: f64,
}

impl VolumeRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Deterministic fixed-order reduction of a real integrand.
    pub fn integrate(&self, f: impl Fn(Vec3) -> f64) -> f64 {
        let mut acc = BlockedSum::new();
        for (node, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(*node));
        }
        acc.value()
    }

    /// Complex counterpart of [`VolumeRule::integrate`].
    pub fn integrate_complex(&self, f: impl Fn(Vec3) -> Complex64) -> Complex64 {
        let mut acc = BlockedComplex::new();
        for (node, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(*node) * *w);
        }
        acc.value()
    }
}

/// Centers (i + 1/2) h for integer i covering (-extent, extent).
fn centered_axis(extent: f64, h: f64) -> Vec<f64> {
    let n = (extent / h).ceil() as i64;
    (-n..n).map(|i| (i as f64 + 0.5) * h).collect()
}

/// Midpoint rule on the ball |y| < radius with cubic cells of edge
/// `spacing`. Total weight converges to the ball volume at first order in
/// the spacing (boundary cells are kept or dropped whole).
pub fn ball_rule(radius: f64, spacing: f64) -> Result<VolumeRule, TransformError> {
    if !(spacing.is_finite() && spacing > 0.0 && spacing < radius) {
        return Err(TransformError::BadSpacing { spacing, extent: radius });
    }
    let axis = centered_axis(radius, spacing);
    let w = spacing * spacing * spacing;
    let r2 = radius * radius;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for &x in &axis {
        for &y in &axis {
            let partial = x * x + y * y;
            if partial >= r2 {
                continue;
            }
            for &z in &axis {
                if partial + z * z < r2 {
                    nodes.push(Vec3::new(x, y, z));
                    weights.push(w);
                }
            }
        }
    }
    Ok(VolumeRule { nodes, weights, spacing })
}

/// Midpoint rule on the cylinder {x1^2 + x2^2 < radius^2, |x3| < half_height}
/// with in-plane square cells of edge `plane_spacing` and `axial_cells`
/// uniform cells along x3. Axial cell boundaries land exactly on
/// +/- half_height, so axial profiles supported on that interval see no
/// partial cells.
pub fn cylinder_rule(
    radius: f64,
    half_height: f64,
    plane_spacing: f64,
    axial_cells: usize,
) -> Result<VolumeRule, TransformError> {
    if !(plane_spacing.is_finite() && plane_spacing > 0.0 && plane_spacing < radius) {
        return Err(TransformError::BadSpacing { spacing: plane_spacing, extent: radius });
    }
    if axial_cells == 0 || !(half_height.is_finite() && half_height > 0.0) {
        return Err(TransformError::BadSpacing { spacing: 0.0, extent: half_height });
    }
    let axis = centered_axis(radius, plane_spacing);
    let dz = 2.0 * half_height / axial_cells as f64;
    let w = plane_spacing * plane_spacing * dz;
    let r2 = radius * radius;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for &x in &axis {
        for &y in &axis {
            if x * x + y * y >= r2 {
                continue;
            }
            for k in 0..axial_cells {
                let z = -half_height + (k as f64 + 0.5) * dz;
                nodes.push(Vec3::new(x, y, z));
                weights.push(w);
            }
        }
    }
    Ok(VolumeRule { nodes, weights, spacing: plane_spacing.max(dz) })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_degenerate_spacing() {
        assert!(matches!(
            ball_rule(1.0, 0.0),
            Err(TransformError::BadSpacing { .. })
        ));
        assert!(matches!(
            ball_rule(1.0, 1.5),
            Err(TransformError::BadSpacing { .. })
        ));
        assert!(matches!(
            cylinder_rule(1.0, 1.0, 0.1, 0),
            Err(TransformError::BadSpacing { .. })
        ));
    }

    #[test]
    fn ball_weight_sum_approaches_ball_volume() {
        let rule = ball_rule(1.0, 0.05).unwrap();
        let volume: f64 = rule.integrate(|_| 1.0);
        assert!(
            (volume - 4.0 * PI / 3.0).abs() < 2e-2,
            "got {volume}, want {}",
            4.0 * PI / 3.0
        );
    }

    #[test]
    fn odd_integrands_cancel_exactly_by_grid_symmetry() {
        let rule = ball_rule(1.0, 0.05).unwrap();
        assert!(rule.integrate(|p| p.x).abs() < 1e-12);
        assert!(rule.integrate(|p| p.x * p.y * p.z).abs() < 1e-13);
    }

    #[test]
    fn gaussian_over_large_ball_matches_full_space_integral() {
        // int exp(-|x|^2) over R^3 = pi^(3/2); the tail beyond radius 4 is
        // ~3e-6 and the midpoint rule on a smooth integrand adds less.
        let rule = ball_rule(4.0, 0.1).unwrap();
        let got = rule.integrate(|p| (-p.norm_sq()).exp());
        assert!(
            (got - PI.powf(1.5)).abs() < 1e-3,
            "got {got}, want {}",
            PI.powf(1.5)
        );
    }

    #[test]
    fn cylinder_weight_sum_approaches_cylinder_volume() {
        let rule = cylinder_rule(1.0, 0.5, 0.02, 20).unwrap();
        let volume: f64 = rule.integrate(|_| 1.0);
        let exact = PI * 1.0 * 1.0 * 1.0; // pi r^2 * 2 * half_height
        assert!((volume - exact).abs() < 2e-2, "got {volume}, want {exact}");
    }

    #[test]
    fn cylinder_axial_cells_align_with_the_declared_slab() {
        let rule = cylinder_rule(1.0, 0.5, 0.1, 10).unwrap();
        for node in &rule.nodes {
            assert!(node.z.abs() < 0.5);
            // centers sit at -0.45, -0.35, ..., 0.45
            let k = (node.z + 0.45) / 0.1;
            assert!((k - k.round()).abs() < 1e-12);
        }
    }

    #[test]
    fn separable_integrand_splits_over_the_cylinder() {
        // int (1 - r^2/R^2) dA * int z^2 dz over the aligned slab
        let rule = cylinder_rule(1.0, 1.0, 0.02, 40).unwrap();
        let got = rule.integrate(|p| (1.0 - (p.x * p.x + p.y * p.y)) * p.z * p.z);
        let exact = (PI / 2.0) * (2.0 / 3.0);
        assert!((got - exact).abs() < 2e-2 * exact, "got {got}, want {exact}");
    }
}
