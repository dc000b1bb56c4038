use num_complex::Complex;

use super::{GreenBundle, WaveContext};
use crate::dyadic::{norm, scale, Dyadic3, Vec3};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn split<T: Real>(rho: &Vec3<T>) -> Result<(T, Vec3<T>)> {
    let r = norm(rho);
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::Coincident { rho: r.as_f64() });
    }
    Ok((r, scale(rho, T::one() / r)))
}

fn four_pi<T: Real>() -> T {
    T::lit(4.0) * T::PI()
}

/// Bulk Green tensor `G(r, r')` as a function of `rho = r - r'`.
pub fn bulk_green<T: Real>(rho: &Vec3<T>, ctx: &WaveContext<T>) -> Result<Dyadic3<T>> {
    let (r, e) = split(rho)?;
    let k = ctx.k();
    if k.norm() == T::zero() {
        return Err(Error::Domain {
            what: "wave number (static limit of G diverges)",
            value: 0.0,
        });
    }
    let i: Complex<T> = Complex::i();
    let kr = k * r;
    let pref = -ctx.mu * (i * kr).exp() / (k * k * (four_pi::<T>() * r.powi(3)));
    let one = Complex::from(T::one());
    let three = Complex::from(T::lit(3.0));
    let a = pref * (one - i * kr - kr * kr);
    let b = -pref * (three - three * i * kr - kr * kr);
    Ok(Dyadic3::isotropic(a, b, &e))
}

/// `curl G` acting on the first argument.
pub fn bulk_green_curl_left<T: Real>(rho: &Vec3<T>, ctx: &WaveContext<T>) -> Result<Dyadic3<T>> {
    let (r, e) = split(rho)?;
    let i: Complex<T> = Complex::i();
    let kr = ctx.k() * r;
    let f = ctx.mu * (i * kr).exp() * (i * kr - T::one()) / (four_pi::<T>() * r * r);
    Ok(Dyadic3::cross_matrix(f, &e))
}

/// `G x grad'` acting on the second argument.
pub fn bulk_green_curl_right<T: Real>(rho: &Vec3<T>, ctx: &WaveContext<T>) -> Result<Dyadic3<T>> {
    Ok(-bulk_green_curl_left(rho, ctx)?)
}

/// `curl G x grad'`; equals `-k^2 G` away from the source point.
pub fn bulk_green_curl_both<T: Real>(rho: &Vec3<T>, ctx: &WaveContext<T>) -> Result<Dyadic3<T>> {
    let (r, e) = split(rho)?;
    let i: Complex<T> = Complex::i();
    let kr = ctx.k() * r;
    let pref = ctx.mu * (i * kr).exp() / (four_pi::<T>() * r.powi(3));
    let one = Complex::from(T::one());
    let three = Complex::from(T::lit(3.0));
    let a = pref * (one - i * kr - kr * kr);
    let b = -pref * (three - three * i * kr - kr * kr);
    Ok(Dyadic3::isotropic(a, b, &e))
}

/// Bulk tensor and all three curls at `rho = r - r'`.
pub fn bulk_bundle<T: Real>(rho: &Vec3<T>, ctx: &WaveContext<T>) -> Result<GreenBundle<T>> {
    let left = bulk_green_curl_left(rho, ctx)?;
    Ok(GreenBundle {
        g: bulk_green(rho, ctx)?,
        curl_left: left,
        curl_right: -left,
        curl_both: bulk_green_curl_both(rho, ctx)?,
    })
}
