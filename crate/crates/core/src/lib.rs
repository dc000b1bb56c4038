//! Casimir-Polder and van der Waals potentials between a ground-state atom
//! and a small magnetodielectric sphere, bare or inside an empty cavity,
//! embedded in a homogeneous host medium.
//!
//! Everything is computed in reduced units (`hbar = c = 1`, frequencies in
//! units of a reference frequency `omega_ref`, lengths in units of
//! `c/omega_ref`); see [`units`] for conversions to SI.
//!
//! The numerical core is generic over the scalar type ([`Real`], implemented
//! for `f32` and `f64`). The aliases below fix it to `f64`.

pub mod dyadic;
pub mod error;
pub mod green;
pub mod potential;
pub mod quadrature;
pub mod response;
pub mod scalar;
pub mod scatterer;
pub mod units;
pub mod verify;

pub use error::{Error, Result, ValidityWarning};
pub use scalar::Real;

pub type Dyadic = dyadic::Dyadic3<f64>;
pub type Lorentz = response::LorentzOscillator<f64>;
pub type Response = response::ResponseSpec<f64>;
pub type HostMedium = response::Medium<f64>;
pub type Atom = response::AtomModel<f64>;
pub type Sphere = scatterer::SphereAssembly<f64>;
pub type Polarizabilities = scatterer::PolarizabilityPair<f64>;
pub type Bulk = green::BulkMedium<f64>;
pub type Wave = green::WaveContext<f64>;
