//! Reduced units and their SI counterparts.
//!
//! Everything inside the crate is nondimensionalised by a reference angular
//! frequency `omega_ref` (normally the atomic transition frequency):
//!
//! | quantity            | reduced value                          |
//! |---------------------|----------------------------------------|
//! | frequency           | `xi / omega_ref`                       |
//! | length              | `r * omega_ref / c`                    |
//! | polarisability      | `alpha / (4 pi eps0 L^3)`              |
//! | magnetisability     | `beta * mu0 / (4 pi L^3)`              |
//! | energy              | `U / (hbar omega_ref)`                 |
//!
//! with `L = c / omega_ref`. In these units `hbar = c = 1`,
//! `eps0 = 1/(4 pi)` and `mu0 = 4 pi`, so the sphere polarisabilities reduce
//! to `R^3 (eps_S - eps)/(eps_S + 2 eps)` and the electric/magnetic duality
//! swap exchanges reduced polarisability and magnetisability one-to-one.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability, H/m.
pub const MU_0: f64 = 1.256_637_062_12e-6;

/// Unit system used for input and output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitSystem {
    #[default]
    Reduced,
    Si,
}

/// Conversion between reduced units and SI for a given reference frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    omega_ref: f64,
}

impl Units {
    pub fn new(omega_ref: f64) -> Result<Self> {
        if !(omega_ref.is_finite() && omega_ref > 0.0) {
            return Err(Error::Domain {
                what: "omega_ref",
                value: omega_ref,
            });
        }
        Ok(Self { omega_ref })
    }

    pub fn omega_ref(&self) -> f64 {
        self.omega_ref
    }

    /// Length scale `c / omega_ref` in metres.
    pub fn length_scale(&self) -> f64 {
        SPEED_OF_LIGHT / self.omega_ref
    }

    pub fn frequency_to_reduced(&self, omega: f64) -> f64 {
        omega / self.omega_ref
    }

    pub fn frequency_to_si(&self, reduced: f64) -> f64 {
        reduced * self.omega_ref
    }

    pub fn length_to_reduced(&self, r: f64) -> f64 {
        r / self.length_scale()
    }

    pub fn length_to_si(&self, reduced: f64) -> f64 {
        reduced * self.length_scale()
    }

    fn polarizability_scale(&self) -> f64 {
        4.0 * PI * EPSILON_0 * self.length_scale().powi(3)
    }

    fn magnetizability_scale(&self) -> f64 {
        4.0 * PI * self.length_scale().powi(3) / MU_0
    }

    pub fn polarizability_to_reduced(&self, alpha: f64) -> f64 {
        alpha / self.polarizability_scale()
    }

    pub fn polarizability_to_si(&self, reduced: f64) -> f64 {
        reduced * self.polarizability_scale()
    }

    pub fn magnetizability_to_reduced(&self, beta: f64) -> f64 {
        beta / self.magnetizability_scale()
    }

    pub fn magnetizability_to_si(&self, reduced: f64) -> f64 {
        reduced * self.magnetizability_scale()
    }

    pub fn energy_to_reduced(&self, u: f64) -> f64 {
        u / (HBAR * self.omega_ref)
    }

    pub fn energy_to_si(&self, reduced: f64) -> f64 {
        reduced * HBAR * self.omega_ref
    }

    /// `|d|^2` (C^2 m^2) to the reduced dipole strength used by
    /// [`crate::response::Transition`].
    pub fn dipole_strength_to_reduced(&self, d_squared: f64) -> f64 {
        d_squared / (HBAR * self.omega_ref * self.polarizability_scale())
    }

    pub fn dipole_strength_to_si(&self, reduced: f64) -> f64 {
        reduced * HBAR * self.omega_ref * self.polarizability_scale()
    }

    /// `|m|^2` (J^2/T^2) to the reduced magnetic dipole strength.
    pub fn magnetic_strength_to_reduced(&self, m_squared: f64) -> f64 {
        m_squared / (HBAR * self.omega_ref * self.magnetizability_scale())
    }

    pub fn magnetic_strength_to_si(&self, reduced: f64) -> f64 {
        reduced * HBAR * self.omega_ref * self.magnetizability_scale()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn rejects_nonpositive_reference() {
        assert!(Units::new(0.0).is_err());
        assert!(Units::new(-1.0).is_err());
        assert!(Units::new(f64::NAN).is_err());
    }

    #[test]
    fn round_trips_are_exact_to_1e14() {
        let u = Units::new(2.3e15).unwrap();
        for &x in &[1e-9, 0.37, 1.0, 42.0, 3.3e7] {
            assert!(rel(u.frequency_to_si(u.frequency_to_reduced(x)), x) < 1e-14);
            assert!(rel(u.length_to_si(u.length_to_reduced(x)), x) < 1e-14);
            assert!(rel(u.polarizability_to_si(u.polarizability_to_reduced(x)), x) < 1e-14);
            assert!(rel(u.magnetizability_to_si(u.magnetizability_to_reduced(x)), x) < 1e-14);
            assert!(rel(u.energy_to_si(u.energy_to_reduced(x)), x) < 1e-14);
            assert!(rel(u.dipole_strength_to_si(u.dipole_strength_to_reduced(x)), x) < 1e-14);
            assert!(
                rel(
                    u.magnetic_strength_to_si(u.magnetic_strength_to_reduced(x)),
                    x
                ) < 1e-14
            );
        }
    }

    #[test]
    fn reduced_static_polarizability_of_two_level_atom() {
        // alpha(0) = 2|d|^2 / (3 hbar omega) in SI; reduced strength s gives 2s/3.
        let u = Units::new(1.0e15).unwrap();
        let d2 = (3.0e-30f64).powi(2);
        let alpha_si = 2.0 * d2 / (3.0 * HBAR * u.omega_ref());
        let s = u.dipole_strength_to_reduced(d2);
        assert!(rel(u.polarizability_to_reduced(alpha_si), 2.0 * s / 3.0) < 1e-13);
    }
}
