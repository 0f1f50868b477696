use std::sync::Arc;

use super::MomentError;
use crate::transforms::SphereQuadrature;
use num_complex::Complex64;

/// Field and normal-derivative traces of a frequency-domain potential on the
/// sphere of radius `radius`, sampled at the nodes of a shared quadrature
/// rule (node k of the rule, scaled to the sphere, carries `values[k]` and
/// `normal_derivs[k]`).
#[derive(Debug, Clone)]
pub struct CauchyData {
    pub kappa: f64,
    pub radius: f64,
    pub rule: Arc<SphereQuadrature>,
    pub values: Vec<Complex64>,
    pub normal_derivs: Vec<Complex64>,
}

impl CauchyData {
    pub fn validate(&self) -> Result<(), MomentError> {
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(MomentError::BadKappa(self.kappa));
        }
        let nodes = self.rule.len();
        if self.values.len() != nodes || self.normal_derivs.len() != nodes {
            return Err(MomentError::MismatchedData {
                values: self.values.len(),
                derivs: self.normal_derivs.len(),
                nodes,
            });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
