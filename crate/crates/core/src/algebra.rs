//! Minimal algebraic interfaces shared by the three evaluation modes:
//! pointwise complex numbers, truncated Taylor jets, and exact series.
//!
//! The transformation formulas are written once against these traits, so the
//! numeric and exact arms run literally the same expressions.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::series::{rat, PuiseuxSeries, Sign};

pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Multiplication by the rational `num/den`.
    fn scale(&self, num: i64, den: i64) -> Self;

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

/// A ring with division and branch-explicit radicals.
pub trait Scalar: Ring + Div<Output = Self> {
    fn constant(c: Complex64) -> Self;

    /// Leading (pointwise) value.
    fn value(&self) -> Complex64;

    /// The `n`-th root whose value is `root_value`; the caller chooses the
    /// branch by choosing `root_value`.
    fn root_with_value(&self, n: u32, root_value: Complex64) -> Self;

    fn sqrt_branch(&self, sign: Sign) -> Self {
        let v = self.value().sqrt() * sign.as_f64();
        self.root_with_value(2, v)
    }

    /// Principal cube root rotated by `e^{2πik/3}`.
    fn cbrt_branch(&self, k: u8) -> Self {
        let v = self.value().cbrt() * cube_root_of_unity(k);
        self.root_with_value(3, v)
    }
}

pub fn cube_root_of_unity(k: u8) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * f64::from(k % 3) / 3.0)
}

impl Ring for Complex64 {
    fn scale(&self, num: i64, den: i64) -> Self {
        self * (num as f64 / den as f64)
    }
}

impl Scalar for Complex64 {
    fn constant(c: Complex64) -> Self {
        c
    }

    fn value(&self) -> Complex64 {
        *self
    }

    fn root_with_value(&self, _n: u32, root_value: Complex64) -> Self {
        root_value
    }
}

impl Ring for PuiseuxSeries {
    fn scale(&self, num: i64, den: i64) -> Self {
        PuiseuxSeries::scale(self, &rat(num, den))
    }
}

/// A `(p, q, r)` point or trajectory component of a first-order system.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Triple<T> {
    pub p: T,
    pub q: T,
    pub r: T,
}

impl<T> Triple<T> {
    pub fn new(p: T, q: T, r: T) -> Self {
        Triple { p, q, r }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Triple<U> {
        Triple {
            p: f(&self.p),
            q: f(&self.q),
            r: f(&self.r),
        }
    }

    pub fn as_array(&self) -> [&T; 3] {
        [&self.p, &self.q, &self.r]
    }
}

impl<T: Clone> Triple<T> {
    pub fn from_slice(s: &[T]) -> Self {
        Triple::new(s[0].clone(), s[1].clone(), s[2].clone())
    }

    pub fn to_vec(&self) -> Vec<T> {
        vec![self.p.clone(), self.q.clone(), self.r.clone()]
    }
}

impl Triple<Complex64> {
    pub fn max_norm(&self) -> f64 {
        self.p.norm().max(self.q.norm()).max(self.r.norm())
    }

    /// Componentwise distance relative to `max(1, |other|)`.
    pub fn relative_distance(&self, other: &Triple<Complex64>) -> f64 {
        let d = (self.p - other.p)
            .norm()
            .max((self.q - other.q).norm())
            .max((self.r - other.r).norm());
        d / other.max_norm().max(1.0)
    }
}
