//! Excess polarisabilities and magnetisabilities of a small sphere, an empty
//! real cavity, and a sphere sitting inside such a cavity.
//!
//! All values are reduced (see [`crate::units`]): the `4 pi eps0` and
//! `4 pi / mu0` prefactors are absorbed, so a full sphere in a host gives
//! `R^3 (eps_S - eps)/(eps_S + 2 eps)`.

use crate::error::{Error, Result};
use crate::response::{AtomModel, LorentzOscillator, Medium, ResponseSpec};
use crate::scalar::Real;

/// Multiple-reflection denominators below this magnitude are treated as
/// singular.
pub const SINGULAR_DENOMINATOR: f64 = 1e-12;

/// Homogeneous sphere, optionally embedded in a concentric empty cavity.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereAssembly<T> {
    radius: T,
    cavity_radius: Option<T>,
    pub eps: ResponseSpec<T>,
    pub mu: ResponseSpec<T>,
}

impl<T: Real> SphereAssembly<T> {
    /// Bare sphere in direct contact with the host.
    pub fn new(radius: T, eps: ResponseSpec<T>, mu: ResponseSpec<T>) -> Result<Self> {
        let s = Self {
            radius,
            cavity_radius: None,
            eps,
            mu,
        };
        s.validate()?;
        Ok(s)
    }

    /// Sphere of radius `radius` inside a cavity of radius `cavity_radius`.
    pub fn with_cavity(
        radius: T,
        cavity_radius: T,
        eps: ResponseSpec<T>,
        mu: ResponseSpec<T>,
    ) -> Result<Self> {
        let s = Self {
            radius,
            cavity_radius: Some(cavity_radius),
            eps,
            mu,
        };
        s.validate()?;
        Ok(s)
    }

    /// Sphere-in-cavity parametrised by `q = R / R_C`.
    pub fn from_ratio(
        q: T,
        cavity_radius: T,
        eps: ResponseSpec<T>,
        mu: ResponseSpec<T>,
    ) -> Result<Self> {
        Self::with_cavity(q * cavity_radius, cavity_radius, eps, mu)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > T::zero() && self.radius.is_finite()) {
            return Err(Error::Domain {
                what: "sphere radius",
                value: self.radius.as_f64(),
            });
        }
        if let Some(rc) = self.cavity_radius {
            if !(rc.is_finite() && rc >= self.radius) {
                return Err(Error::InvalidParameter {
                    what: "cavity radius",
                    reason: format!(
                        "must satisfy 0 < R <= R_C, got R = {}, R_C = {}",
                        self.radius, rc
                    ),
                });
            }
        }
        self.eps.validate()?;
        self.mu.validate()
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn cavity_radius(&self) -> Option<T> {
        self.cavity_radius
    }

    /// `R / R_C`, if a cavity is present.
    pub fn q(&self) -> Option<T> {
        self.cavity_radius.map(|rc| self.radius / rc)
    }

    pub fn volume(&self) -> T {
        T::lit(4.0) * T::PI() / T::lit(3.0) * self.radius.powi(3)
    }

    /// Permittivity and permeability exchanged.
    pub fn dual(&self) -> Self {
        Self {
            radius: self.radius,
            cavity_radius: self.cavity_radius,
            eps: self.mu.clone(),
            mu: self.eps.clone(),
        }
    }

    /// Largest optical radius of the assembly over the imaginary axis:
    /// `max(sqrt(eps_S mu_S) R, sqrt(eps mu) R_C)` at zero frequency, where
    /// all passive responses peak.
    pub fn effective_radius(&self, host: &Medium<T>) -> T {
        let sphere = (self.eps.static_value() * self.mu.static_value()).sqrt() * self.radius;
        match self.cavity_radius {
            Some(rc) => sphere.max((host.eps.static_value() * host.mu.static_value()).sqrt() * rc),
            None => sphere,
        }
    }

    /// Excess response relative to the host at `i xi`: the sphere-in-cavity
    /// result when a cavity is present, the full-sphere result otherwise.
    pub fn excess(&self, host_eps: T, host_mu: T, xi: T) -> Result<PolarizabilityPair<T>> {
        match self.cavity_radius {
            Some(_) => sphere_in_cavity_excess(self, host_eps, host_mu, xi),
            None => excess_full_sphere(self, host_eps, host_mu, xi),
        }
    }
}

/// Reduced polarisability (`alpha`) and magnetisability (`beta`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PolarizabilityPair<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> PolarizabilityPair<T> {
    pub fn new(alpha: T, beta: T) -> Self {
        Self { alpha, beta }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Electric/magnetic exchange.
    pub fn swapped(self) -> Self {
        Self::new(self.beta, self.alpha)
    }
}

#[inline]
fn contrast<T: Real>(inner: T, outer: T) -> T {
    (inner - outer) / (inner + T::lit(2.0) * outer)
}

fn check_host<T: Real>(host_eps: T, host_mu: T) -> Result<()> {
    if !(host_eps > T::zero() && host_eps.is_finite()) {
        return Err(Error::Domain {
            what: "host permittivity",
            value: host_eps.as_f64(),
        });
    }
    if !(host_mu > T::zero() && host_mu.is_finite()) {
        return Err(Error::Domain {
            what: "host permeability",
            value: host_mu.as_f64(),
        });
    }
    Ok(())
}

/// Full sphere in direct contact with a host of `(host_eps, host_mu)`.
pub fn excess_full_sphere<T: Real>(
    assembly: &SphereAssembly<T>,
    host_eps: T,
    host_mu: T,
    xi: T,
) -> Result<PolarizabilityPair<T>> {
    check_host(host_eps, host_mu)?;
    let eps_s = assembly.eps.at_imaginary(xi)?;
    let mu_s = assembly.mu.eval_imaginary(xi);
    let r3 = assembly.radius.powi(3);
    Ok(PolarizabilityPair::new(
        r3 * contrast(eps_s, host_eps),
        r3 * contrast(mu_s, host_mu),
    ))
}

/// Free-space polarisability and magnetisability of the sphere.
pub fn free_space_sphere<T: Real>(
    assembly: &SphereAssembly<T>,
    xi: T,
) -> Result<PolarizabilityPair<T>> {
    excess_full_sphere(assembly, T::one(), T::one(), xi)
}

/// Excess response of an empty cavity of radius `cavity_radius` cut into
/// the host.
pub fn cavity_excess<T: Real>(
    cavity_radius: T,
    host_eps: T,
    host_mu: T,
) -> Result<PolarizabilityPair<T>> {
    if !(cavity_radius > T::zero() && cavity_radius.is_finite()) {
        return Err(Error::Domain {
            what: "cavity radius",
            value: cavity_radius.as_f64(),
        });
    }
    check_host(host_eps, host_mu)?;
    let rc3 = cavity_radius.powi(3);
    Ok(PolarizabilityPair::new(
        rc3 * cavity_contrast(host_eps),
        rc3 * cavity_contrast(host_mu),
    ))
}

#[inline]
fn cavity_contrast<T: Real>(host: T) -> T {
    if host.is_infinite() {
        return -T::lit(0.5);
    }
    (T::one() - host) / (T::one() + T::lit(2.0) * host)
}

fn cavity_parts<T: Real>(assembly: &SphereAssembly<T>) -> Result<(T, T)> {
    let rc = assembly.cavity_radius.ok_or(Error::InvalidParameter {
        what: "cavity radius",
        reason: "sphere-in-cavity response requires a cavity".into(),
    })?;
    Ok((assembly.radius, rc))
}

/// Sphere-plus-cavity excess response in the factored form: cavity
/// reflection plus the free-space sphere response dressed with the
/// transmission factors and the sphere/cavity multiple-reflection
/// denominator.
pub fn sphere_in_cavity_excess<T: Real>(
    assembly: &SphereAssembly<T>,
    host_eps: T,
    host_mu: T,
    xi: T,
) -> Result<PolarizabilityPair<T>> {
    let (_, rc) = cavity_parts(assembly)?;
    let cavity = cavity_excess(rc, host_eps, host_mu)?;
    let free = free_space_sphere(assembly, xi)?;
    let rc6 = rc.powi(6);
    let two = T::lit(2.0);
    let three = T::lit(3.0);

    let den_e = T::one() + two * cavity.alpha * free.alpha / rc6;
    let den_m = T::one() + two * cavity.beta * free.beta / rc6;
    for den in [den_e, den_m] {
        if den.abs() < T::lit(SINGULAR_DENOMINATOR) {
            return Err(Error::SingularConfiguration {
                denominator: den.as_f64(),
            });
        }
    }
    let t_e = three * host_eps / (two * host_eps + T::one());
    let t_m = three / (two * host_mu + T::one());
    Ok(PolarizabilityPair::new(
        cavity.alpha + free.alpha / host_eps * t_e * t_e / den_e,
        cavity.beta + free.beta * host_mu * t_m * t_m / den_m,
    ))
}

/// Same quantity as [`sphere_in_cavity_excess`], evaluated from the
/// unfactored reflection-coefficient expression. Kept as a cross-check.
pub fn sphere_in_cavity_excess_direct<T: Real>(
    assembly: &SphereAssembly<T>,
    host_eps: T,
    host_mu: T,
    xi: T,
) -> Result<PolarizabilityPair<T>> {
    let (r, rc) = cavity_parts(assembly)?;
    check_host(host_eps, host_mu)?;
    let eps_s = assembly.eps.at_imaginary(xi)?;
    let mu_s = assembly.mu.eval_imaginary(xi);
    let q3 = (r / rc).powi(3);
    let rc3 = rc.powi(3);
    let r3 = r.powi(3);

    let branch = |inner: T, outer: T| -> Result<T> {
        let one = T::one();
        let two = T::lit(2.0);
        let den = (inner + two) * (two * outer + one) + two * (inner - one) * (one - outer) * q3;
        if den.abs() < T::lit(SINGULAR_DENOMINATOR) {
            return Err(Error::SingularConfiguration {
                denominator: den.as_f64(),
            });
        }
        Ok(rc3 * (one - outer) / (one + two * outer)
            + T::lit(9.0) * outer * r3 * (inner - one) / (two * outer + one) / den)
    };
    Ok(PolarizabilityPair::new(
        branch(eps_s, host_eps)?,
        branch(mu_s, host_mu)?,
    ))
}

/// Sphere-in-cavity response with sphere/cavity multiple reflections
/// dropped (valid for `R << R_C`).
pub fn sphere_in_cavity_excess_dilute<T: Real>(
    assembly: &SphereAssembly<T>,
    host_eps: T,
    host_mu: T,
    xi: T,
) -> Result<PolarizabilityPair<T>> {
    let (_, rc) = cavity_parts(assembly)?;
    let cavity = cavity_excess(rc, host_eps, host_mu)?;
    let free = free_space_sphere(assembly, xi)?;
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let t_e = three * host_eps / (two * host_eps + T::one());
    let t_m = three / (two * host_mu + T::one());
    Ok(PolarizabilityPair::new(
        cavity.alpha + free.alpha / host_eps * t_e * t_e,
        cavity.beta + free.beta * host_mu * t_m * t_m,
    ))
}

/// Inverts the Clausius-Mossotti relation: returns `(eps_S, mu_S)` at `i xi`
/// of a sphere of radius `radius` whose free-space response equals the
/// atom's polarisability and magnetisability.
pub fn clausius_mossotti_sphere<T: Real>(atom: &AtomModel<T>, radius: T, xi: T) -> Result<(T, T)> {
    if !(radius > T::zero() && radius.is_finite()) {
        return Err(Error::Domain {
            what: "sphere radius",
            value: radius.as_f64(),
        });
    }
    let r3 = radius.powi(3);
    let invert = |ratio: T| -> Result<T> {
        if ratio >= T::one() {
            return Err(Error::ClausiusMossotti {
                xi: xi.as_f64(),
                ratio: ratio.as_f64(),
            });
        }
        Ok((T::one() + T::lit(2.0) * ratio) / (T::one() - ratio))
    };
    Ok((
        invert(atom.polarizability_at(xi)? / r3)?,
        invert(atom.magnetizability_at(xi)? / r3)?,
    ))
}

/// Clausius-Mossotti sphere materials as response models.
///
/// For an atom with at most one electric and one magnetic transition the
/// inverted relation is exactly a single undamped Lorentz oscillator with
/// `omega_p^2 = 2 omega s / R^3` and `omega_t^2 = omega^2 - (2/3) omega s / R^3`.
/// Multi-transition atoms do not map onto the oscillator family and are
/// rejected.
pub fn clausius_mossotti_materials<T: Real>(atom: &AtomModel<T>, radius: T) -> Result<Medium<T>> {
    if !(radius > T::zero() && radius.is_finite()) {
        return Err(Error::Domain {
            what: "sphere radius",
            value: radius.as_f64(),
        });
    }
    let r3 = radius.powi(3);
    let convert = |transitions: &[crate::response::Transition<T>]| -> Result<ResponseSpec<T>> {
        let active: Vec<_> = transitions
            .iter()
            .filter(|t| t.strength > T::zero())
            .collect();
        match active.as_slice() {
            [] => Ok(ResponseSpec::Vacuum),
            [t] => {
                let shift = T::lit(2.0 / 3.0) * t.omega * t.strength / r3;
                let wt2 = t.omega * t.omega - shift;
                if wt2 <= T::zero() {
                    return Err(Error::ClausiusMossotti {
                        xi: 0.0,
                        ratio: (shift / (t.omega * t.omega)).as_f64(),
                    });
                }
                Ok(ResponseSpec::Lorentz(vec![LorentzOscillator::new(
                    wt2.sqrt(),
                    (T::lit(3.0) * shift).sqrt(),
                    T::zero(),
                )?]))
            }
            _ => Err(Error::InvalidParameter {
                what: "atom",
                reason: "Clausius-Mossotti materials need at most one transition per kind".into(),
            }),
        }
    };
    Ok(Medium::new(
        convert(&atom.electric)?,
        convert(&atom.magnetic)?,
    ))
}
