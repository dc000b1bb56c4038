use num_complex::Complex;

use super::{bulk_bundle, WaveContext};
use crate::dyadic::{neg, norm, scale, Dyadic3, Vec3};
use crate::error::{Error, Result, ValidityWarning};
use crate::scalar::Real;
use crate::scatterer::SINGULAR_DENOMINATOR;

/// Separations below `EXCLUSION_FACTOR` effective radii are rejected.
pub const EXCLUSION_FACTOR: f64 = 2.0;
/// Separations below `WARNING_FACTOR` effective radii produce a warning.
pub const WARNING_FACTOR: f64 = 5.0;

const SIZE_WARNING: f64 = 0.1;

/// l = 1 reflection coefficients of a small scatterer.
#[derive(Debug, Clone, PartialEq)]
pub struct MieL1<T> {
    pub b_m: Complex<T>,
    pub b_n: Complex<T>,
    pub warnings: Vec<ValidityWarning>,
}

fn size_check<T: Real>(
    which: &'static str,
    x: Complex<T>,
    warnings: &mut Vec<ValidityWarning>,
) -> Result<()> {
    let v = x.norm().as_f64();
    if !(v < 1.0) {
        return Err(Error::SmallSphere { which, value: v });
    }
    if v > SIZE_WARNING {
        warnings.push(ValidityWarning::LargeSizeParameter { which, value: v });
    }
    Ok(())
}

fn check_radius<T: Real>(what: &'static str, r: T) -> Result<()> {
    if !(r > T::zero() && r.is_finite()) {
        return Err(Error::Domain {
            what,
            value: r.as_f64(),
        });
    }
    Ok(())
}

fn prefactor<T: Real>(ctx: &WaveContext<T>) -> Complex<T> {
    let k = ctx.k();
    Complex::<T>::i() * T::lit(2.0 / 3.0) * k * k * k
}

/// Small full sphere of radius `radius` and response `(eps_s, mu_s)`
/// (evaluated at `ctx.omega`) in the host of `ctx`.
pub fn mie_l1_full_sphere<T: Real>(
    ctx: &WaveContext<T>,
    radius: T,
    eps_s: Complex<T>,
    mu_s: Complex<T>,
) -> Result<MieL1<T>> {
    check_radius("sphere radius", radius)?;
    let mut warnings = Vec::new();
    size_check(
        "|k_S R|",
        (eps_s * mu_s).sqrt() * ctx.omega * radius,
        &mut warnings,
    )?;
    size_check("|k R|", ctx.k() * radius, &mut warnings)?;
    let two = T::lit(2.0);
    let r3 = radius.powi(3);
    let pref = prefactor(ctx) * r3;
    Ok(MieL1 {
        b_m: pref * (mu_s - ctx.mu) / (mu_s + ctx.mu * two),
        b_n: pref * (eps_s - ctx.eps) / (eps_s + ctx.eps * two),
        warnings,
    })
}

/// Small sphere of radius `radius` centred in an empty cavity of radius
/// `cavity_radius` cut into the host of `ctx`.
pub fn mie_l1_sphere_in_cavity<T: Real>(
    ctx: &WaveContext<T>,
    radius: T,
    cavity_radius: T,
    eps_s: Complex<T>,
    mu_s: Complex<T>,
) -> Result<MieL1<T>> {
    check_radius("sphere radius", radius)?;
    check_radius("cavity radius", cavity_radius)?;
    if radius > cavity_radius {
        return Err(Error::InvalidParameter {
            what: "sphere radius",
            reason: "sphere does not fit inside the cavity".into(),
        });
    }
    let mut warnings = Vec::new();
    size_check(
        "|k_S R|",
        (eps_s * mu_s).sqrt() * ctx.omega * radius,
        &mut warnings,
    )?;
    size_check("|k R_C|", ctx.k() * cavity_radius, &mut warnings)?;
    let q3 = (radius / cavity_radius).powi(3);
    let rc3 = cavity_radius.powi(3);
    let r3 = radius.powi(3);
    let one = Complex::from(T::one());
    let two = T::lit(2.0);
    let bracket = |inner: Complex<T>, outer: Complex<T>| -> Result<Complex<T>> {
        let den = (inner + two) * (outer * two + one) + (inner - one) * (one - outer) * (two * q3);
        if den.norm() < T::lit(SINGULAR_DENOMINATOR) {
            return Err(Error::SingularConfiguration {
                denominator: den.norm().as_f64(),
            });
        }
        Ok((one - outer) / (one + outer * two) * rc3
            + outer * (inner - one) / (outer * two + one) / den * (T::lit(9.0) * r3))
    };
    let pref = prefactor(ctx);
    Ok(MieL1 {
        b_m: pref * bracket(mu_s, ctx.mu)?,
        b_n: pref * bracket(eps_s, ctx.eps)?,
        warnings,
    })
}

/// Equal-position scattering Green tensor of a small sphere at the origin,
/// written in closed form for reduced excess polarisability `alpha` and
/// magnetisability `beta` (complex to allow real frequencies).
pub fn small_sphere_green_closed_form<T: Real>(
    r: &Vec3<T>,
    ctx: &WaveContext<T>,
    alpha: Complex<T>,
    beta: Complex<T>,
) -> Result<Dyadic3<T>> {
    let d = norm(r);
    if !(d > T::zero()) {
        return Err(Error::Coincident { rho: d.as_f64() });
    }
    let e = scale(r, T::one() / d);
    let k = ctx.k();
    let i: Complex<T> = Complex::i();
    let x = k * d;
    let x2 = x * x;
    let x3 = x2 * x;
    let x4 = x2 * x2;
    let c = |v: f64| Complex::from(T::lit(v));
    let four_pi = T::lit(4.0) * T::PI();
    let phase = (i * x * T::lit(2.0)).exp();

    let pe = ctx.mu * phase / (k * k * (four_pi * d.powi(6))) * alpha;
    let a_e = c(1.0) - i * x * c(2.0) - x2 * c(3.0) + i * x3 * c(2.0) + x4;
    let b_e = c(3.0) - i * x * c(6.0) - x2 - i * x3 * c(2.0) - x4;
    let pm = ctx.mu * phase / (four_pi * d.powi(4)) * beta * (c(1.0) - i * x * c(2.0) - x2);
    Ok(Dyadic3::isotropic(pe * a_e + pm, pe * b_e - pm, &e))
}

/// Scattering Green tensor of a point-like sphere at the origin between
/// `r` and `r2`, composed from bulk tensors:
/// `4 pi eps omega^2 alpha G(r,0).G(0,r2) - (4 pi/mu) beta [G(r,0) x grad][grad x G(0,r2)]`.
pub fn scattering_green_composed<T: Real>(
    r: &Vec3<T>,
    r2: &Vec3<T>,
    ctx: &WaveContext<T>,
    alpha: Complex<T>,
    beta: Complex<T>,
) -> Result<Dyadic3<T>> {
    let to = bulk_bundle(r, ctx)?;
    let from = bulk_bundle(&neg(r2), ctx)?;
    let four_pi = T::lit(4.0) * T::PI();
    let e =
        to.g.dot(&from.g)
            .scale(ctx.eps * ctx.omega * ctx.omega * alpha * four_pi);
    let m = to
        .curl_right
        .dot(&from.curl_left)
        .scale(-beta * four_pi / ctx.mu);
    Ok(e + m)
}

/// Rejects separations inside `EXCLUSION_FACTOR` effective radii and warns
/// inside `WARNING_FACTOR`.
pub fn check_separation(separation: f64, effective_radius: f64) -> Result<Option<ValidityWarning>> {
    let limit = EXCLUSION_FACTOR * effective_radius;
    if !(separation > limit) {
        return Err(Error::Validity { separation, limit });
    }
    if separation < WARNING_FACTOR * effective_radius {
        return Ok(Some(ValidityWarning::CloseSeparation {
            separation,
            effective_radius,
        }));
    }
    Ok(None)
}

/// Equal-position scattering Green tensor with the separation guard
/// applied.
pub fn scattering_green_small_sphere<T: Real>(
    r: &Vec3<T>,
    ctx: &WaveContext<T>,
    alpha: Complex<T>,
    beta: Complex<T>,
    effective_radius: T,
) -> Result<(Dyadic3<T>, Option<ValidityWarning>)> {
    let warning = check_separation(norm(r).as_f64(), effective_radius.as_f64())?;
    Ok((
        small_sphere_green_closed_form(r, ctx, alpha, beta)?,
        warning,
    ))
}
