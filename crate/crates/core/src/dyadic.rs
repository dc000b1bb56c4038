//! Complex 3x3 tensors and small vector helpers.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::Real;

pub type Vec3<T> = [T; 3];
pub type CVec3<T> = [Complex<T>; 3];

pub fn norm<T: Real>(v: &Vec3<T>) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn scale<T: Real>(v: &Vec3<T>, s: T) -> Vec3<T> {
    [v[0] * s, v[1] * s, v[2] * s]
}

pub fn neg<T: Real>(v: &Vec3<T>) -> Vec3<T> {
    [-v[0], -v[1], -v[2]]
}

pub fn sub<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn to_complex<T: Real>(v: &Vec3<T>) -> CVec3<T> {
    [
        Complex::from(v[0]),
        Complex::from(v[1]),
        Complex::from(v[2]),
    ]
}

/// Matrix-vector product for a real 3x3 matrix.
pub fn mat_vec<T: Real>(m: &[[T; 3]; 3], v: &Vec3<T>) -> Vec3<T> {
    let mut out = [T::zero(); 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

/// Complex 3x3 tensor (dyadic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dyadic3<T> {
    pub m: [[Complex<T>; 3]; 3],
}

impl<T: Real> Dyadic3<T> {
    pub fn zero() -> Self {
        Self {
            m: [[Complex::from(T::zero()); 3]; 3],
        }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Complex::from(T::one())
            } else {
                Complex::from(T::zero())
            }
        })
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let mut m = [[Complex::from(T::zero()); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = f(i, j);
            }
        }
        Self { m }
    }

    pub fn from_real(r: [[T; 3]; 3]) -> Self {
        Self::from_fn(|i, j| Complex::from(r[i][j]))
    }

    /// `a I + b e e` for a unit vector `e`.
    pub fn isotropic(a: Complex<T>, b: Complex<T>, e: &Vec3<T>) -> Self {
        Self::from_fn(|i, j| {
            let base = b * (e[i] * e[j]);
            if i == j {
                base + a
            } else {
                base
            }
        })
    }

    /// `u v` (no conjugation).
    pub fn outer(u: &CVec3<T>, v: &CVec3<T>) -> Self {
        Self::from_fn(|i, j| u[i] * v[j])
    }

    /// `f [v]_x`, the matrix with `[v]_x w = v x w`.
    pub fn cross_matrix(f: Complex<T>, v: &Vec3<T>) -> Self {
        let z = T::zero();
        let r = [[z, -v[2], v[1]], [v[2], z, -v[0]], [-v[1], v[0], z]];
        Self::from_fn(|i, j| f * r[i][j])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i])
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_fn(|i, j| self.m[i][j] * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.m[i][j] * s)
    }

    pub fn dot(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            self.m[i][0] * other.m[0][j]
                + self.m[i][1] * other.m[1][j]
                + self.m[i][2] * other.m[2][j]
        })
    }

    pub fn apply(&self, v: &CVec3<T>) -> CVec3<T> {
        let mut out = [Complex::from(T::zero()); 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.m[i][0] * v[0] + self.m[i][1] * v[1] + self.m[i][2] * v[2];
        }
        out
    }

    /// `R D R^T` for a real rotation matrix `R`.
    pub fn rotate(&self, r: &[[T; 3]; 3]) -> Self {
        let rc = Self::from_real(*r);
        rc.dot(self).dot(&rc.transpose())
    }

    pub fn max_abs(&self) -> T {
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, c| acc.max(c.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// Largest component deviation, relative to the largest component of
    /// `reference`.
    pub fn rel_diff(&self, reference: &Self) -> T {
        let scale = reference.max_abs();
        let diff = self.max_abs_diff(reference);
        if scale == T::zero() {
            diff
        } else {
            diff / scale
        }
    }

    /// Largest imaginary part relative to the largest modulus.
    pub fn imaginary_fraction(&self) -> T {
        let scale = self.max_abs();
        if scale == T::zero() {
            return T::zero();
        }
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, c| acc.max(c.im.abs()))
            / scale
    }

    pub fn re(&self) -> [[T; 3]; 3] {
        let mut out = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.m[i][j].re;
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl<T: Real> Index<(usize, usize)> for Dyadic3<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.m[i][j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Dyadic3<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.m[i][j]
    }
}

impl<T: Real> Add for Dyadic3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j] + o.m[i][j])
    }
}

impl<T: Real> Sub for Dyadic3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j] - o.m[i][j])
    }
}

impl<T: Real> Neg for Dyadic3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.m[i][j])
    }
}

impl<T: Real> Mul for Dyadic3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.dot(&o)
    }
}

impl<T: Real> Mul<Complex<T>> for Dyadic3<T> {
    type Output = Self;
    fn mul(self, s: Complex<T>) -> Self {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_trace() {
        let e = [0.0, 0.6, 0.8];
        let d = Dyadic3::isotropic(Complex::new(2.0, 1.0), Complex::new(-0.5, 0.25), &e);
        let t = d.trace();
        assert!((t - Complex::new(5.5, 3.25)).norm() < 1e-15);
    }

    #[test]
    fn cross_matrix_acts_as_cross_product() {
        let v = [1.0f64, -2.0, 0.5];
        let w = to_complex(&[0.3, 0.7, -1.1]);
        let out = Dyadic3::cross_matrix(Complex::from(1.0), &v).apply(&w);
        let expected = [
            -2.0 * -1.1 - 0.5 * 0.7,
            0.5 * 0.3 - 1.0 * -1.1,
            1.0 * 0.7 - -2.0 * 0.3,
        ];
        for i in 0..3 {
            assert!((out[i].re - expected[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn cross_matrix_squared_is_minus_transverse_projector() {
        let e = [0.48, 0.6, 0.64];
        let x = Dyadic3::cross_matrix(Complex::from(1.0), &e);
        let p = Dyadic3::isotropic(Complex::from(-1.0), Complex::from(1.0), &e);
        assert!((x * x).max_abs_diff(&p) < 1e-15);
    }
}
