use num_complex::Complex;

use super::{SphericalPoint, WaveContext};
use crate::dyadic::{CVec3, Dyadic3};
use crate::error::Result;
use crate::scalar::Real;

/// Azimuthal parity of a vector wave function (`cos m phi` or `sin m phi`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Spherical Hankel function of the first kind, order 1.
pub fn hankel1<T: Real>(x: Complex<T>) -> Complex<T> {
    let i: Complex<T> = Complex::i();
    -i * (Complex::from(T::one()) - i * x) * (i * x).exp() / (x * x)
}

/// `d[x h_1(x)]/dx`.
pub fn hankel1_derivative<T: Real>(x: Complex<T>) -> Complex<T> {
    let i: Complex<T> = Complex::i();
    (i * x).exp() * (i / (x * x) + Complex::from(T::one()) / x - i)
}

/// `P_1^m(cos theta)`, `dP_1^m/dtheta` and `m P_1^m / sin theta` for m = 0, 1.
fn legendre<T: Real>(m: u8, theta: T) -> (T, T, T) {
    let (s, c) = theta.sin_cos();
    match m {
        0 => (c, -s, T::zero()),
        _ => (-s, -c, -T::one()),
    }
}

fn to_cartesian<T: Real>(p: &SphericalPoint<T>, comps: [Complex<T>; 3]) -> CVec3<T> {
    let (er, et, ep) = (p.e_r(), p.e_theta(), p.e_phi());
    let mut out = [Complex::from(T::zero()); 3];
    for i in 0..3 {
        out[i] = comps[0] * er[i] + comps[1] * et[i] + comps[2] * ep[i];
    }
    out
}

fn azimuthal<T: Real>(m: u8, parity: Parity, phi: T) -> (T, T, T) {
    // (factor on the theta component of M, factor on the phi component of M, sign)
    let mphi = T::lit(m as f64) * phi;
    let (s, c) = mphi.sin_cos();
    match parity {
        Parity::Even => (s, c, -T::one()),
        Parity::Odd => (c, s, T::one()),
    }
}

/// `M_{1m}` (m = 0 or 1) at `p`, in Cartesian components.
pub fn vector_wave_m<T: Real>(
    m: u8,
    parity: Parity,
    p: &SphericalPoint<T>,
    ctx: &WaveContext<T>,
) -> Result<CVec3<T>> {
    check_order(m)?;
    let h = hankel1(ctx.k() * p.r);
    let (_, dp, m_over_sin) = legendre(m, p.theta);
    let (t1, t2, sign) = azimuthal(m, parity, p.phi);
    let zero = Complex::from(T::zero());
    Ok(to_cartesian(
        p,
        [zero, h * (sign * m_over_sin * t1), -h * (dp * t2)],
    ))
}

/// `N_{1m}` (m = 0 or 1) at `p`, in Cartesian components.
pub fn vector_wave_n<T: Real>(
    m: u8,
    parity: Parity,
    p: &SphericalPoint<T>,
    ctx: &WaveContext<T>,
) -> Result<CVec3<T>> {
    check_order(m)?;
    let x = ctx.k() * p.r;
    let h = hankel1(x);
    let hd = hankel1_derivative(x) / x;
    let (pl, dp, m_over_sin) = legendre(m, p.theta);
    let (t1, t2, sign) = azimuthal(m, parity, p.phi);
    let two = T::lit(2.0);
    Ok(to_cartesian(
        p,
        [
            h / x * (two * pl * t2),
            hd * (dp * t2),
            hd * (sign * m_over_sin * t1),
        ],
    ))
}

fn check_order(m: u8) -> Result<()> {
    if m > 1 {
        return Err(crate::error::Error::InvalidParameter {
            what: "azimuthal order",
            reason: format!("only m = 0, 1 exist for l = 1, got {m}"),
        });
    }
    Ok(())
}

fn outer<T: Real>(a: &CVec3<T>, b: &CVec3<T>) -> Dyadic3<T> {
    Dyadic3::from_fn(|i, j| a[i] * b[j])
}

/// `sum_{m,+-} M M` and `sum_{m,+-} N N` over the l = 1 modes, evaluated
/// mode by mode. All normalisation weights equal one for l = 1.
pub fn wave_dyadic_sums<T: Real>(
    p: &SphericalPoint<T>,
    ctx: &WaveContext<T>,
) -> Result<(Dyadic3<T>, Dyadic3<T>)> {
    let mut mm = Dyadic3::zero();
    let mut nn = Dyadic3::zero();
    for m in 0..=1u8 {
        for parity in [Parity::Even, Parity::Odd] {
            let mv = vector_wave_m(m, parity, p, ctx)?;
            let nv = vector_wave_n(m, parity, p, ctx)?;
            mm = mm + outer(&mv, &mv);
            nn = nn + outer(&nv, &nv);
        }
    }
    Ok((mm, nn))
}

/// l = 1 scattering Green tensor at equal positions from the wave-function
/// expansion with reflection coefficients `b_m` and `b_n`.
pub fn wavefunction_green_l1<T: Real>(
    p: &SphericalPoint<T>,
    ctx: &WaveContext<T>,
    b_m: Complex<T>,
    b_n: Complex<T>,
) -> Result<Dyadic3<T>> {
    let (mm, nn) = wave_dyadic_sums(p, ctx)?;
    let pref = Complex::<T>::i() * ctx.mu * ctx.k() / (T::lit(4.0) * T::PI()) * T::lit(1.5);
    Ok((mm.scale(b_m) + nn.scale(b_n)).scale(pref))
}
