use num_complex::Complex;

use crate::dyadic::Dyadic3;
use crate::scalar::Real;

/// A Green tensor together with its left, right and double curls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenBundle<T> {
    pub g: Dyadic3<T>,
    pub curl_left: Dyadic3<T>,
    pub curl_right: Dyadic3<T>,
    pub curl_both: Dyadic3<T>,
}

impl<T: Real> GreenBundle<T> {
    pub fn zero() -> Self {
        let z = Dyadic3::zero();
        Self {
            g: z,
            curl_left: z,
            curl_right: z,
            curl_both: z,
        }
    }

    pub fn max_rel_diff(&self, other: &Self) -> T {
        self.g
            .rel_diff(&other.g)
            .max(self.curl_left.rel_diff(&other.curl_left))
            .max(self.curl_right.rel_diff(&other.curl_right))
            .max(self.curl_both.rel_diff(&other.curl_both))
    }
}

impl<T: Real> std::ops::Add for GreenBundle<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            g: self.g + o.g,
            curl_left: self.curl_left + o.curl_left,
            curl_right: self.curl_right + o.curl_right,
            curl_both: self.curl_both + o.curl_both,
        }
    }
}

/// Permittivity and permeability at the two arguments `r` and `r'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMedia<T> {
    pub eps: Complex<T>,
    pub mu: Complex<T>,
    pub eps_prime: Complex<T>,
    pub mu_prime: Complex<T>,
}

impl<T: Real> PointMedia<T> {
    pub fn uniform(eps: Complex<T>, mu: Complex<T>) -> Self {
        Self {
            eps,
            mu,
            eps_prime: eps,
            mu_prime: mu,
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            eps: self.mu,
            mu: self.eps,
            eps_prime: self.mu_prime,
            mu_prime: self.eps_prime,
        }
    }
}

/// Maps the bundle of an environment onto the bundle of its dual
/// (`eps <-> mu` everywhere). Applying it twice gives back the input.
pub fn duality_transform<T: Real>(
    b: &GreenBundle<T>,
    media: &PointMedia<T>,
    omega: Complex<T>,
) -> GreenBundle<T> {
    let w2 = omega * omega;
    GreenBundle {
        g: b.curl_both
            .scale(-Complex::from(T::one()) / (media.mu * media.mu_prime * w2)),
        curl_left: b.curl_right.scale(-media.eps / media.mu_prime),
        curl_right: b.curl_left.scale(-media.eps_prime / media.mu),
        curl_both: b.g.scale(-(media.eps * media.eps_prime * w2)),
    }
}
