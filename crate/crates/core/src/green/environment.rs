use num_complex::Complex;

use super::{bulk_bundle, GreenBundle, WaveContext};
use crate::dyadic::{sub, Dyadic3, Vec3};
use crate::error::Result;
use crate::response::Medium;
use crate::scalar::Real;
use crate::scatterer::PolarizabilityPair;

/// A linear, local, isotropic environment described by its Green tensor on
/// the imaginary frequency axis.
pub trait Environment<T: Real>: Send + Sync {
    /// `(eps, mu)` at position `r` and frequency `i xi`.
    fn response_at(&self, r: &Vec3<T>, xi: T) -> Result<(T, T)>;

    /// Full Green tensor and curls between `r` and `r2` (`r != r2`).
    fn bundle(&self, r: &Vec3<T>, r2: &Vec3<T>, xi: T) -> Result<GreenBundle<T>>;

    /// Scattering part only; regular at `r = r2`.
    fn scattering_bundle(&self, r: &Vec3<T>, r2: &Vec3<T>, xi: T) -> Result<GreenBundle<T>>;
}

/// Unbounded homogeneous medium.
#[derive(Debug, Clone, PartialEq)]
pub struct BulkMedium<T> {
    pub medium: Medium<T>,
}

impl<T: Real> BulkMedium<T> {
    pub fn new(medium: Medium<T>) -> Result<Self> {
        medium.validate()?;
        Ok(Self { medium })
    }

    pub fn context(&self, xi: T) -> Result<WaveContext<T>> {
        let (eps, mu) = self.medium.at_imaginary(xi)?;
        Ok(WaveContext::imaginary(xi, eps, mu))
    }

    pub fn dual(&self) -> Self {
        Self {
            medium: self.medium.dual(),
        }
    }
}

impl<T: Real> Environment<T> for BulkMedium<T> {
    fn response_at(&self, _r: &Vec3<T>, xi: T) -> Result<(T, T)> {
        self.medium.at_imaginary(xi)
    }

    fn bundle(&self, r: &Vec3<T>, r2: &Vec3<T>, xi: T) -> Result<GreenBundle<T>> {
        bulk_bundle(&sub(r, r2), &self.context(xi)?)
    }

    fn scattering_bundle(&self, _r: &Vec3<T>, _r2: &Vec3<T>, _xi: T) -> Result<GreenBundle<T>> {
        Ok(GreenBundle::zero())
    }
}

/// Scattering Green tensor and curls of `env` with a point-like sphere of
/// excess response `pair` added at `centre`, at frequency `i xi`.
pub fn sphere_scattering_bundle<T: Real, E: Environment<T> + ?Sized>(
    env: &E,
    r: &Vec3<T>,
    r2: &Vec3<T>,
    centre: &Vec3<T>,
    pair: PolarizabilityPair<T>,
    xi: T,
) -> Result<GreenBundle<T>> {
    let (eps, mu) = env.response_at(centre, xi)?;
    let to = env.bundle(r, centre, xi)?;
    let from = env.bundle(centre, r2, xi)?;
    let four_pi = T::lit(4.0) * T::PI();
    let ce = Complex::from(-four_pi * eps * xi * xi * pair.alpha);
    let cm = Complex::from(-four_pi / mu * pair.beta);
    let term = |a: &Dyadic3<T>, b: &Dyadic3<T>, c: &Dyadic3<T>, d: &Dyadic3<T>| {
        a.dot(b).scale(ce) + c.dot(d).scale(cm)
    };
    let own = env.scattering_bundle(r, r2, xi)?;
    Ok(own
        + GreenBundle {
            g: term(&to.g, &from.g, &to.curl_right, &from.curl_left),
            curl_left: term(&to.curl_left, &from.g, &to.curl_both, &from.curl_left),
            curl_right: term(&to.g, &from.curl_right, &to.curl_right, &from.curl_both),
            curl_both: term(
                &to.curl_left,
                &from.curl_right,
                &to.curl_both,
                &from.curl_both,
            ),
        })
}

/// Scattering Green tensor of `env` plus a point-like sphere at `centre`.
pub fn sphere_scattering_green<T: Real, E: Environment<T> + ?Sized>(
    env: &E,
    r: &Vec3<T>,
    r2: &Vec3<T>,
    centre: &Vec3<T>,
    pair: PolarizabilityPair<T>,
    xi: T,
) -> Result<Dyadic3<T>> {
    Ok(sphere_scattering_bundle(env, r, r2, centre, pair, xi)?.g)
}

/// Double curl of the scattering Green tensor of `env` plus a point-like
/// sphere at `centre`.
pub fn sphere_scattering_curl_both<T: Real, E: Environment<T> + ?Sized>(
    env: &E,
    r: &Vec3<T>,
    r2: &Vec3<T>,
    centre: &Vec3<T>,
    pair: PolarizabilityPair<T>,
    xi: T,
) -> Result<Dyadic3<T>> {
    Ok(sphere_scattering_bundle(env, r, r2, centre, pair, xi)?.curl_both)
}
