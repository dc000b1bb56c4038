//! Linear response of media, spheres and atoms on the imaginary frequency
//! axis, plus the real-cavity local-field factors.
//!
//! Every evaluation substitutes `omega = i xi` analytically, so the results
//! are plain reals: a Lorentz oscillator becomes
//! `1 + omega_p^2 / (omega_t^2 + xi^2 + xi gamma)` and an atomic transition
//! `(2/3) omega_k s_k / (omega_k^2 + xi^2)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_xi<T: Real>(xi: T) -> Result<()> {
    if xi >= T::zero() && xi.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "imaginary frequency xi",
            value: xi.as_f64(),
        })
    }
}

/// Single damped resonance `omega_p^2 / (omega_t^2 - omega^2 - i omega gamma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzOscillator<T> {
    pub omega_t: T,
    pub omega_p: T,
    pub gamma: T,
}

impl<T: Real> LorentzOscillator<T> {
    pub fn new(omega_t: T, omega_p: T, gamma: T) -> Result<Self> {
        let osc = Self {
            omega_t,
            omega_p,
            gamma,
        };
        osc.validate()?;
        Ok(osc)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_t > T::zero() && self.omega_t.is_finite()) {
            return Err(Error::Domain {
                what: "oscillator resonance omega_t",
                value: self.omega_t.as_f64(),
            });
        }
        if !(self.omega_p >= T::zero() && self.omega_p.is_finite()) {
            return Err(Error::Domain {
                what: "oscillator plasma frequency omega_p",
                value: self.omega_p.as_f64(),
            });
        }
        if !(self.gamma >= T::zero() && self.gamma.is_finite()) {
            return Err(Error::Domain {
                what: "oscillator damping gamma",
                value: self.gamma.as_f64(),
            });
        }
        Ok(())
    }

    #[inline]
    fn imaginary_axis_term(&self, xi: T) -> T {
        self.omega_p * self.omega_p / (self.omega_t * self.omega_t + xi * xi + xi * self.gamma)
    }

    fn complex_term(&self, omega: Complex<T>) -> Complex<T> {
        let i = Complex::new(T::zero(), T::one());
        let num = Complex::from(self.omega_p * self.omega_p);
        num / (Complex::from(self.omega_t * self.omega_t) - omega * omega - i * omega * self.gamma)
    }
}

/// Permittivity or permeability model.
#[derive(Debug, Clone, PartialEq)]
pub enum ResponseSpec<T> {
    Vacuum,
    /// Frequency-independent value (>= 1).
    Constant(T),
    /// `1 + sum of Lorentz oscillators`.
    Lorentz(Vec<LorentzOscillator<T>>),
}

impl<T: Real> Default for ResponseSpec<T> {
    fn default() -> Self {
        ResponseSpec::Vacuum
    }
}

impl<T: Real> ResponseSpec<T> {
    pub fn constant(value: T) -> Result<Self> {
        let spec = ResponseSpec::Constant(value);
        spec.validate()?;
        Ok(spec)
    }

    pub fn lorentz(omega_t: T, omega_p: T, gamma: T) -> Result<Self> {
        Ok(ResponseSpec::Lorentz(vec![LorentzOscillator::new(
            omega_t, omega_p, gamma,
        )?]))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ResponseSpec::Vacuum => Ok(()),
            ResponseSpec::Constant(v) => {
                if *v >= T::one() && v.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Domain {
                        what: "constant response value",
                        value: v.as_f64(),
                    })
                }
            }
            ResponseSpec::Lorentz(oscs) => oscs.iter().try_for_each(|o| o.validate()),
        }
    }

    /// Value at `omega = i xi`.
    pub fn at_imaginary(&self, xi: T) -> Result<T> {
        check_xi(xi)?;
        Ok(self.eval_imaginary(xi))
    }

    /// Same as [`Self::at_imaginary`] without the domain check; callers
    /// guarantee `xi >= 0`.
    #[inline]
    pub(crate) fn eval_imaginary(&self, xi: T) -> T {
        match self {
            ResponseSpec::Vacuum => T::one(),
            ResponseSpec::Constant(v) => *v,
            ResponseSpec::Lorentz(oscs) => oscs
                .iter()
                .fold(T::one(), |acc, o| acc + o.imaginary_axis_term(xi)),
        }
    }

    /// Value at an arbitrary complex frequency.
    pub fn at(&self, omega: Complex<T>) -> Complex<T> {
        match self {
            ResponseSpec::Vacuum => Complex::from(T::one()),
            ResponseSpec::Constant(v) => Complex::from(*v),
            ResponseSpec::Lorentz(oscs) => oscs.iter().fold(Complex::from(T::one()), |acc, o| {
                acc + o.complex_term(omega)
            }),
        }
    }

    /// Static value, which is also the maximum over the imaginary axis.
    pub fn static_value(&self) -> T {
        self.eval_imaginary(T::zero())
    }

    /// True when the model evaluates to exactly one everywhere.
    pub fn is_vacuum(&self) -> bool {
        match self {
            ResponseSpec::Vacuum => true,
            ResponseSpec::Constant(v) => *v == T::one(),
            ResponseSpec::Lorentz(oscs) => oscs.iter().all(|o| o.omega_p == T::zero()),
        }
    }
}

/// `eps(i xi)` of a response model.
pub fn permittivity_at<T: Real>(spec: &ResponseSpec<T>, xi: T) -> Result<T> {
    spec.at_imaginary(xi)
}

/// Permittivity/permeability pair of a homogeneous medium.
#[derive(Debug, Clone, PartialEq)]
pub struct Medium<T> {
    pub eps: ResponseSpec<T>,
    pub mu: ResponseSpec<T>,
}

impl<T: Real> Default for Medium<T> {
    fn default() -> Self {
        Self {
            eps: ResponseSpec::Vacuum,
            mu: ResponseSpec::Vacuum,
        }
    }
}

impl<T: Real> Medium<T> {
    pub fn new(eps: ResponseSpec<T>, mu: ResponseSpec<T>) -> Self {
        Self { eps, mu }
    }

    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        self.eps.validate()?;
        self.mu.validate()
    }

    /// Electric/magnetic dual: permittivity and permeability exchanged.
    pub fn dual(&self) -> Self {
        Self {
            eps: self.mu.clone(),
            mu: self.eps.clone(),
        }
    }

    /// `(eps(i xi), mu(i xi))`.
    pub fn at_imaginary(&self, xi: T) -> Result<(T, T)> {
        check_xi(xi)?;
        Ok((self.eps.eval_imaginary(xi), self.mu.eval_imaginary(xi)))
    }
}

/// Atomic dipole transition from the ground state.
///
/// `strength` is `|d_0k|^2` (or `|m_0k|^2`) in reduced units, see
/// [`crate::units::Units::dipole_strength_to_reduced`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition<T> {
    pub omega: T,
    pub strength: T,
}

impl<T: Real> Transition<T> {
    pub fn new(omega: T, strength: T) -> Result<Self> {
        let t = Self { omega, strength };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > T::zero() && self.omega.is_finite()) {
            return Err(Error::Domain {
                what: "transition frequency",
                value: self.omega.as_f64(),
            });
        }
        if !(self.strength >= T::zero() && self.strength.is_finite()) {
            return Err(Error::Domain {
                what: "transition strength",
                value: self.strength.as_f64(),
            });
        }
        Ok(())
    }
}

fn transition_sum<T: Real>(transitions: &[Transition<T>], xi: T) -> T {
    let two_thirds = T::lit(2.0 / 3.0);
    transitions.iter().fold(T::zero(), |acc, t| {
        acc + two_thirds * t.omega * t.strength / (t.omega * t.omega + xi * xi)
    })
}

/// Ground-state atom described by its electric and magnetic dipole
/// transitions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AtomModel<T> {
    pub electric: Vec<Transition<T>>,
    pub magnetic: Vec<Transition<T>>,
}

impl<T: Real> AtomModel<T> {
    pub fn new(electric: Vec<Transition<T>>, magnetic: Vec<Transition<T>>) -> Result<Self> {
        let atom = Self { electric, magnetic };
        atom.validate()?;
        Ok(atom)
    }

    /// Purely electric two-level atom with transition frequency `omega` and
    /// static polarisability `alpha0` (both reduced).
    pub fn two_level(omega: T, alpha0: T) -> Result<Self> {
        let strength = T::lit(1.5) * alpha0 * omega;
        Self::new(vec![Transition::new(omega, strength)?], Vec::new())
    }

    /// Two-level atom with both an electric and a magnetic transition at the
    /// same frequency, with static responses `alpha0` and `beta0`.
    pub fn two_level_magnetoelectric(omega: T, alpha0: T, beta0: T) -> Result<Self> {
        let s = T::lit(1.5) * omega;
        Self::new(
            vec![Transition::new(omega, s * alpha0)?],
            vec![Transition::new(omega, s * beta0)?],
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.electric
            .iter()
            .chain(self.magnetic.iter())
            .try_for_each(|t| t.validate())
    }

    pub fn polarizability_at(&self, xi: T) -> Result<T> {
        check_xi(xi)?;
        Ok(transition_sum(&self.electric, xi))
    }

    pub fn magnetizability_at(&self, xi: T) -> Result<T> {
        check_xi(xi)?;
        Ok(transition_sum(&self.magnetic, xi))
    }

    pub fn is_magnetic(&self) -> bool {
        self.magnetic.iter().any(|t| t.strength > T::zero())
    }

    pub fn is_electric(&self) -> bool {
        self.electric.iter().any(|t| t.strength > T::zero())
    }

    /// Electric and magnetic transitions exchanged.
    pub fn dual(&self) -> Self {
        Self {
            electric: self.magnetic.clone(),
            magnetic: self.electric.clone(),
        }
    }

    /// `lim xi^2 alpha(i xi) = (2/3) sum omega_k s_k`.
    pub fn polarizability_high_frequency_coefficient(&self) -> T {
        let two_thirds = T::lit(2.0 / 3.0);
        self.electric
            .iter()
            .fold(T::zero(), |acc, t| acc + two_thirds * t.omega * t.strength)
    }
}

pub fn atomic_polarizability_at<T: Real>(atom: &AtomModel<T>, xi: T) -> Result<T> {
    atom.polarizability_at(xi)
}

pub fn atomic_magnetizability_at<T: Real>(atom: &AtomModel<T>, xi: T) -> Result<T> {
    atom.magnetizability_at(xi)
}

/// Unsquared electric real-cavity factor `3 eps / (2 eps + 1)`.
pub fn local_field_electric<T: Real>(eps: T) -> Result<T> {
    if !(eps >= T::zero()) {
        return Err(Error::Domain {
            what: "permittivity for local-field factor",
            value: eps.as_f64(),
        });
    }
    if eps.is_infinite() {
        return Ok(T::lit(1.5));
    }
    Ok(T::lit(3.0) * eps / (T::lit(2.0) * eps + T::one()))
}

/// Unsquared magnetic real-cavity factor `3 / (2 mu + 1)`.
pub fn local_field_magnetic<T: Real>(mu: T) -> Result<T> {
    if !(mu >= T::zero()) {
        return Err(Error::Domain {
            what: "permeability for local-field factor",
            value: mu.as_f64(),
        });
    }
    Ok(T::lit(3.0) / (T::lit(2.0) * mu + T::one()))
}
