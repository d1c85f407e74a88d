//! Truncated Taylor jets in the independent variable `x`.
//!
//! Coefficients are stored normalised (`cₖ = y⁽ᵏ⁾/k!`); [`Jet::derivative`]
//! returns the raw derivative. All arithmetic is exact to the jet's order.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::algebra::{Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    c: [Complex64; N],
}

/// Jets carrying value and derivatives through order 4.
pub type Jet4 = Jet<5>;

impl<const N: usize> Jet<N> {
    pub const ORDER: usize = N - 1;

    pub fn constant(v: Complex64) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); N];
        c[0] = v;
        Jet { c }
    }

    pub fn from_taylor(c: [Complex64; N]) -> Self {
        Jet { c }
    }

    /// Builds a jet from raw derivatives `y, y', y'', …`.
    pub fn from_derivatives(d: &[Complex64]) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); N];
        let mut fact = 1.0;
        for (k, v) in d.iter().take(N).enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            c[k] = v / fact;
        }
        Jet { c }
    }

    pub fn taylor(&self) -> &[Complex64; N] {
        &self.c
    }

    pub fn taylor_mut(&mut self) -> &mut [Complex64; N] {
        &mut self.c
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> Complex64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.c[k] * fact
    }

    pub fn derivatives(&self) -> [Complex64; N] {
        let mut d = self.c;
        for (k, v) in d.iter_mut().enumerate() {
            *v = self.derivative(k);
        }
        d
    }

    /// Jet of `y'`; the top coefficient is unknown and set to zero, so the
    /// result is exact only through order `N - 2`.
    pub fn differentiate(&self) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); N];
        for k in 0..N - 1 {
            c[k] = self.c[k + 1] * (k + 1) as f64;
        }
        Jet { c }
    }

    /// Evaluates the Taylor polynomial at offset `h`.
    pub fn eval(&self, h: Complex64) -> Complex64 {
        self.c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * h + c)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `self^α` given the branch value `b0 = c₀^α`, by the power-rule
    /// recurrence `b_k = 1/(k a₀) Σ_{j=1..k} ((α+1)j − k) a_j b_{k−j}`.
    pub fn powf_with_value(&self, alpha: f64, b0: Complex64) -> Self {
        let a = &self.c;
        let mut b = [Complex64::new(0.0, 0.0); N];
        b[0] = b0;
        for k in 1..N {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += a[j] * b[k - j] * ((alpha + 1.0) * j as f64 - k as f64);
            }
            b[k] = acc / (a[0] * k as f64);
        }
        Jet { c: b }
    }

    pub fn recip(&self) -> Self {
        let mut b = [Complex64::new(0.0, 0.0); N];
        let inv = self.c[0].inv();
        b[0] = inv;
        for k in 1..N {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.c[j] * b[k - j];
            }
            b[k] = -acc * inv;
        }
        Jet { c: b }
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.c.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); N];
        for i in 0..N {
            for j in 0..N - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c }
    }
}

impl<const N: usize> Mul<Complex64> for Jet<N> {
    type Output = Self;
    fn mul(mut self, rhs: Complex64) -> Self {
        for a in self.c.iter_mut() {
            *a *= rhs;
        }
        self
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // series division without forming the reciprocal
        let mut c = [Complex64::new(0.0, 0.0); N];
        let inv = rhs.c[0].inv();
        for k in 0..N {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= rhs.c[j] * c[k - j];
            }
            c[k] = acc * inv;
        }
        Jet { c }
    }
}

impl<const N: usize> Ring for Jet<N> {
    fn scale(&self, num: i64, den: i64) -> Self {
        *self * Complex64::new(num as f64 / den as f64, 0.0)
    }
}

impl<const N: usize> Scalar for Jet<N> {
    fn constant(c: Complex64) -> Self {
        Jet::constant(c)
    }

    fn value(&self) -> Complex64 {
        self.c[0]
    }

    fn root_with_value(&self, n: u32, root_value: Complex64) -> Self {
        self.powf_with_value(1.0 / f64::from(n), root_value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Sign;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Jet of x ↦ x at x0.
    fn var(x0: Complex64) -> Jet<6> {
        let mut j = Jet::constant(x0);
        j.taylor_mut()[1] = c(1.0);
        j
    }

    #[test]
    fn product_and_quotient_of_polynomials() {
        let x = var(c(2.0));
        let y = x * x * x; // x³ at 2: 8, 12, 12/2!, 6/3!
        assert_eq!(y.derivative(0), c(8.0));
        assert_eq!(y.derivative(1), c(12.0));
        assert_eq!(y.derivative(2), c(12.0));
        assert_eq!(y.derivative(3), c(6.0));
        let back = y / x;
        assert!((back.derivative(2) - c(2.0)).norm() < 1e-14);
        assert!((x.recip().derivative(1) + c(0.25)).norm() < 1e-15);
    }

    #[test]
    fn radicals_follow_the_branch_value() {
        let x = var(c(4.0));
        let s = x.sqrt_branch(Sign::Minus);
        assert_eq!(s.value(), c(-2.0));
        // d/dx (-√x) = -1/(2√x) = -1/4
        assert!((s.derivative(1) + c(0.25)).norm() < 1e-15);
        let sq = s * s;
        for k in 1..6 {
            let expected = if k == 1 { c(1.0) } else { c(0.0) };
            assert!((sq.taylor()[k] - expected).norm() < 1e-14);
        }
        let cube = x.cbrt_branch(1);
        let back = cube * cube * cube;
        for k in 0..6 {
            assert!((back.taylor()[k] - x.taylor()[k]).norm() < 1e-13);
        }
    }

    #[test]
    fn differentiate_and_eval() {
        let x = var(c(1.0));
        let y = x * x;
        let d = y.differentiate();
        assert_eq!(d.value(), c(2.0));
        assert_eq!(y.eval(c(0.5)), c(2.25));
        let from = Jet::<5>::from_derivatives(&[c(-6.0), c(6.0), c(-12.0), c(36.0)]);
        assert_eq!(from.derivative(3), c(36.0));
        assert_eq!(from.taylor()[3], c(6.0));
    }
}
