//! Position from four sphere distances.
//!
//! With receivers x1..x4 on the sphere |x| = R, the squared-distance
//! equations |a - xj|^2 = gj^2 all share the unknown |a|^2, so subtracting
//! the first from the others leaves the linear system
//!
//! ```text
//! 2 (x1 - xj) . a = gj^2 - g1^2,    j = 2, 3, 4,
//! ```
//!
//! which is uniquely solvable exactly when the receivers are non-coplanar.

use super::OrbitError;
use crate::core::{ReceiverArray, Vec3, COPLANAR_TOL};

/// Solves the three difference equations by Cramer's rule and returns the
/// source position.
///
/// # Errors
///
/// [`OrbitError::SingularGeometry`] when the receiver geometry is coplanar
/// to within `1e-9 R^3` (the system determinant is too small to invert).
///
/// # Panics
///
/// If the array does not hold exactly four receivers or a distance is not
/// finite and non-negative.
pub fn trilaterate(array: &ReceiverArray, distances: [f64; 4]) -> Result<Vec3, OrbitError> {
    assert_eq!(array.positions.len(), 4, "trilateration needs four receivers");
    assert!(
        distances.iter().all(|g| g.is_finite() && *g >= 0.0),
        "distances must be finite and non-negative"
    );

    let [r1, r2, r3] = array.difference_matrix();
    let det = r1.dot(r2.cross(r3));
    if det.abs() <= COPLANAR_TOL * array.radius.powi(3) {
        return Err(OrbitError::SingularGeometry { det });
    }

    let base = distances[0] * distances[0];
    let b = [
        distances[1] * distances[1] - base,
        distances[2] * distances[2] - base,
        distances[3] * distances[3] - base,
    ];
    // For rows r1, r2, r3 the inverse acts as a = sum_j b_j (r_k x r_l) / det
    // with (j, k, l) cyclic: each cross product annihilates the other rows.
    let solution =
        (r2.cross(r3) * b[0] + r3.cross(r1) * b[1] + r1.cross(r2) * b[2]) * (1.0 / det);
    Ok(solution)
}

// --- tests -------------------------------------------------------------------
