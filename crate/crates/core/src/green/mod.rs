//! Dyadic Green tensors of a homogeneous host and of a small sphere
//! embedded in it, the l = 1 spherical vector wave functions, and the
//! electric/magnetic duality transformation.
//!
//! All lengths and frequencies are reduced (`c = 1`), so `k = sqrt(eps mu) omega`.

mod bulk;
mod duality;
mod environment;
mod small_sphere;
mod waves;

use num_complex::Complex;

use crate::dyadic::Vec3;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub use bulk::{
    bulk_bundle, bulk_green, bulk_green_curl_both, bulk_green_curl_left, bulk_green_curl_right,
};
pub use duality::{duality_transform, GreenBundle, PointMedia};
pub use environment::{
    sphere_scattering_bundle, sphere_scattering_curl_both, sphere_scattering_green, BulkMedium,
    Environment,
};
pub use small_sphere::{
    check_separation, mie_l1_full_sphere, mie_l1_sphere_in_cavity, scattering_green_composed,
    scattering_green_small_sphere, small_sphere_green_closed_form, MieL1, EXCLUSION_FACTOR,
    WARNING_FACTOR,
};
pub use waves::{
    hankel1, hankel1_derivative, vector_wave_m, vector_wave_n, wave_dyadic_sums,
    wavefunction_green_l1, Parity,
};

/// Frequency and host response at which a Green tensor is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveContext<T> {
    pub omega: Complex<T>,
    pub eps: Complex<T>,
    pub mu: Complex<T>,
}

impl<T: Real> WaveContext<T> {
    pub fn new(omega: Complex<T>, eps: Complex<T>, mu: Complex<T>) -> Self {
        Self { omega, eps, mu }
    }

    /// `omega = i xi` with real host response.
    pub fn imaginary(xi: T, eps: T, mu: T) -> Self {
        Self::new(
            Complex::new(T::zero(), xi),
            Complex::from(eps),
            Complex::from(mu),
        )
    }

    /// Real frequency with (possibly complex) host response.
    pub fn real(omega: T, eps: Complex<T>, mu: Complex<T>) -> Self {
        Self::new(Complex::from(omega), eps, mu)
    }

    /// `sqrt(eps mu)` on the principal branch.
    pub fn refractive_index(&self) -> Complex<T> {
        (self.eps * self.mu).sqrt()
    }

    /// Host wave number.
    pub fn k(&self) -> Complex<T> {
        self.refractive_index() * self.omega
    }

    /// Context for the dual host (eps and mu exchanged).
    pub fn dual(&self) -> Self {
        Self::new(self.omega, self.mu, self.eps)
    }
}

/// Point in spherical coordinates about the sphere centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint<T> {
    pub r: T,
    pub theta: T,
    pub phi: T,
}

impl<T: Real> SphericalPoint<T> {
    pub fn new(r: T, theta: T, phi: T) -> Result<Self> {
        if !(r > T::zero() && r.is_finite()) {
            return Err(Error::Domain {
                what: "radial distance",
                value: r.as_f64(),
            });
        }
        if !(theta >= T::zero() && theta <= T::PI()) {
            return Err(Error::Domain {
                what: "polar angle",
                value: theta.as_f64(),
            });
        }
        Ok(Self { r, theta, phi })
    }

    pub fn from_cartesian(v: &Vec3<T>) -> Result<Self> {
        let r = crate::dyadic::norm(v);
        if r == T::zero() {
            return Err(Error::Coincident { rho: 0.0 });
        }
        let theta = (v[2] / r).max(-T::one()).min(T::one()).acos();
        let mut phi = v[1].atan2(v[0]);
        if phi < T::zero() {
            phi = phi + T::TAU();
        }
        Self::new(r, theta, phi)
    }

    pub fn to_cartesian(&self) -> Vec3<T> {
        crate::dyadic::scale(&self.e_r(), self.r)
    }

    pub fn e_r(&self) -> Vec3<T> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn e_theta(&self) -> Vec3<T> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [ct * cp, ct * sp, -st]
    }

    pub fn e_phi(&self) -> Vec3<T> {
        let (sp, cp) = self.phi.sin_cos();
        [-sp, cp, T::zero()]
    }
}
