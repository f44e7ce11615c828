//! Fractional angular momentum of neutral dipolar atoms.
//!
//! * [`params`], [`fields`], [`duality`]: physical inputs, source fields and
//!   the electric/magnetic dual maps.
//! * [`algebra`]: exact phase-space polynomials, Poisson and Dirac brackets.
//! * [`spectral`]: per-sector spectra of the trapped dipole and the 2D oracle.
//! * [`reduction`]: lowest-band projection and the small-mass limit.
//! * [`cyon`]: closed-form spin and surface-term quantities.

pub mod algebra;
pub mod cyon;
pub mod duality;
pub mod error;
pub mod fields;
pub mod params;
pub mod reduction;
pub mod spectral;

pub use error::{Error, ErrorClass, Result};
pub use params::{Config, FieldConfig, FieldKind, SystemParams};
