use super::error::ValidationError;
use super::vec3::Vec3;

/// Relative tolerance for the on-sphere check |x| = R.
pub const ON_SPHERE_TOL: f64 = 1e-12;

/// Scale-aware non-coplanarity threshold: the trilateration matrix
/// determinant must exceed this multiple of R^3.
pub const COPLANAR_TOL: f64 = 1e-9;

/// Measurement points on the sphere of radius `radius` centered at the
/// origin.
#[derive(Debug, Clone)]
pub struct ReceiverArray {
    pub positions: Vec<Vec3>,
    pub radius: f64,
}

impl ReceiverArray {
    pub fn new(positions: Vec<Vec3>, radius: f64) -> Self {
        ReceiverArray { positions, radius }
    }

    /// The symmetric non-coplanar array R {(1,0,0), (-1,0,0), (0,1,0),
    /// (0,0,1)} used by the recovery fixtures.
    pub fn symmetric(radius: f64) -> Self {
        ReceiverArray::new(
            vec![
                Vec3::new(radius, 0.0, 0.0),
                Vec3::new(-radius, 0.0, 0.0),
                Vec3::new(0.0, radius, 0.0),
                Vec3::new(0.0, 0.0, radius),
            ],
            radius,
        )
    }

    /// Rows of the 3x3 trilateration system 2 (x1 - xj) . a = gj^2 - g1^2,
    /// j = 2, 3, 4. Only defined for 4-receiver arrays.
    pub fn difference_matrix(&self) -> [Vec3; 3] {
        let p = &self.positions;
        [
            (p[0] - p[1]) * 2.0,
            (p[0] - p[2]) * 2.0,
            (p[0] - p[3]) * 2.0,
        ]
    }
}

/// Checks that every receiver lies on the sphere and, for 4-receiver arrays,
/// that the positions are non-coplanar (the trilateration matrix determinant
/// exceeds 1e-9 R^3).
pub fn validate_receivers(array: &ReceiverArray) -> Result<(), ValidationError> {
    if array.positions.is_empty() {
        return Err(ValidationError::EmptyArray);
    }
    if !(array.radius.is_finite() && array.radius > 0.0) {
        return Err(ValidationError::NonFinite("receiver radius"));
    }
    for (index, p) in array.positions.iter().enumerate() {
        if !p.is_finite() {
            return Err(ValidationError::NonFinite("receiver position"));
        }
        let actual = p.norm();
        if (actual - array.radius).abs() > ON_SPHERE_TOL * array.radius {
            return Err(ValidationError::OffSphere { index, radius: array.radius, actual });
        }
    }
    if array.positions.len() == 4 {
        let [r1, r2, r3] = array.difference_matrix();
        let det = r1.dot(r2.cross(r3));
        let tol = COPLANAR_TOL * array.radius.powi(3);
        if det.abs() <= tol {
            return Err(ValidationError::Coplanar { det: det.abs(), tol });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
