//! Acoustic wave fields in 3D homogeneous free space and two constructive
//! inverse procedures built on top of them.
//!
//! The forward side simulates the pressure field radiated by
//!
//! * a harmonic point source moving along a sub-sonic orbit (retarded-time
//!   evaluation of the Lienard-Wiechert-type kernel),
//! * extended space-time sources via retarded volume potentials, and
//! * their frequency-domain counterparts (outgoing Helmholtz potentials),
//!
//! together with a classical non-radiating source construction that produces
//! identically zero boundary data.
//!
//! The inverse side implements:
//!
//! * orbit recovery: given the field time series at four non-coplanar
//!   receivers on a sphere, integrate a scalar ODE for each receiver-to-source
//!   distance and trilaterate the source position at every time step
//!   ([`orbit`]);
//! * source recovery: given multi-frequency Cauchy data on the sphere, extract
//!   Fourier samples of the spatial source profile through Green-identity
//!   moments and synthesize a band-limited reconstruction ([`srcrec`]).
//!
//! Wave speed is normalized to 1 throughout, so lengths and travel times
//! share units.
//!
//! ```
//! use wavesrc::core::{Orbit, Vec3};
//! use wavesrc::forward::moving_point_field;
//!
//! // A source at rest at the origin, switched on at t = 0, observed at
//! // distance 2: the signal arrives at t = 2 with amplitude 1/(8 pi).
//! let orbit = Orbit::fixed(0.1, 0.5);
//! let x = Vec3::new(2.0, 0.0, 0.0);
//! assert_eq!(moving_point_field(&orbit, 1.0, x, 1.0), 0.0);
//! let u = moving_point_field(&orbit, 1.0, x, 2.0);
//! assert!((u - 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-12);
//! ```

pub mod cli;
pub mod core;
pub mod forward;
pub mod orbit;
pub mod srcrec;
pub mod transforms;
