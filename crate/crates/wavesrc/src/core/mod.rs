//! Geometry, signal, source, and configuration types shared by every
//! algorithm in the crate.

mod config;
mod error;
mod orbit;
mod receivers;
mod series;
mod source;
mod vec3;

pub use config::Config;
pub use error::ValidationError;
pub use orbit::{Orbit, OrbitPath, SampledPath};
pub use receivers::{validate_receivers, ReceiverArray, COPLANAR_TOL};
pub use series::TimeSeries;
pub use source::{nonradiating_from_chi, ChiSpec, SourceSpec};
pub use source::{radial_bump_laplacian, smooth_bump, smooth_bump_d1, smooth_bump_d2};
pub use source::{PlaneMap, SpaceTimeMap, SpatialMap, TimeMap};
pub use vec3::Vec3;
