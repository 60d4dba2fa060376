//! Truncated Taylor series ("jets") for forward-mode differentiation to
//! arbitrary fixed order. `Jet<T, N>` holds `f(t₀), f′(t₀), f″(t₀)/2!, …`,
//! i.e. the first `N` Taylor coefficients in `h = t − t₀`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_f64(x: f64) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn ln(self) -> Self {
        Complex64::ln(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<T, const N: usize>(pub [T; N]);

impl<T: Scalar, const N: usize> Jet<T, N> {
    pub fn constant(c: T) -> Self {
        let mut a = [T::zero(); N];
        a[0] = c;
        Jet(a)
    }

    /// The independent variable at `t₀`.
    pub fn variable(t0: T) -> Self {
        let mut a = [T::zero(); N];
        a[0] = t0;
        if N > 1 {
            a[1] = T::from_f64(1.0);
        }
        Jet(a)
    }

    pub fn value(&self) -> T {
        self.0[0]
    }

    /// `k`-th derivative: `k! · aₖ`.
    pub fn derivative(&self, k: usize) -> T {
        self.0[k] * T::from_f64(factorial(k))
    }

    pub fn scale(&self, c: T) -> Self {
        Jet(self.0.map(|x| x * c))
    }

    pub fn add_scalar(&self, c: T) -> Self {
        let mut a = self.0;
        a[0] = a[0] + c;
        Jet(a)
    }

    pub fn recip(&self) -> Self {
        let inv = T::from_f64(1.0) / self.0[0];
        let mut b = [T::zero(); N];
        b[0] = inv;
        for n in 1..N {
            let mut s = T::zero();
            for j in 1..=n {
                s = s + self.0[j] * b[n - j];
            }
            b[n] = -(s * inv);
        }
        Jet(b)
    }

    pub fn exp(&self) -> Self {
        let mut e = [T::zero(); N];
        e[0] = self.0[0].exp();
        for n in 1..N {
            let mut s = T::zero();
            for j in 1..=n {
                s = s + T::from_f64(j as f64) * self.0[j] * e[n - j];
            }
            e[n] = s * T::from_f64(1.0 / n as f64);
        }
        Jet(e)
    }

    /// Natural logarithm (principal branch at the constant term).
    pub fn ln(&self) -> Self {
        let a0 = self.0[0];
        let mut l = [T::zero(); N];
        l[0] = a0.ln();
        for n in 1..N {
            let mut s = T::zero();
            for j in 1..n {
                s = s + T::from_f64(j as f64) * l[j] * self.0[n - j];
            }
            l[n] = (self.0[n] - s * T::from_f64(1.0 / n as f64)) / a0;
        }
        Jet(l)
    }

    /// `self^r` for real `r` via `exp(r ln self)`.
    pub fn powf(&self, r: f64) -> Self {
        self.ln().scale(T::from_f64(r)).exp()
    }

    /// `Σ cᵢ selfⁱ` by Horner's rule.
    pub fn compose_poly(&self, c: &[f64]) -> Self {
        let mut acc = Jet::constant(T::zero());
        for &ci in c.iter().rev() {
            acc = (acc * *self).add_scalar(T::from_f64(ci));
        }
        acc
    }
}

impl<const N: usize> Jet<f64, N> {
    /// `(sin, cos)` of a real jet.
    pub fn sin_cos(&self) -> (Self, Self) {
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        (s[0], c[0]) = self.0[0].sin_cos();
        for n in 1..N {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=n {
                let w = j as f64 * self.0[j];
                ss += w * c[n - j];
                cc += w * s[n - j];
            }
            s[n] = ss / n as f64;
            c[n] = -cc / n as f64;
        }
        (Jet(s), Jet(c))
    }

    pub fn to_complex(&self) -> Jet<Complex64, N> {
        Jet(self.0.map(|x| Complex64::new(x, 0.0)))
    }
}

impl<const N: usize> Jet<Complex64, N> {
    pub fn re(&self) -> Jet<f64, N> {
        Jet(self.0.map(|z| z.re))
    }
    pub fn im(&self) -> Jet<f64, N> {
        Jet(self.0.map(|z| z.im))
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |a, i| a * i as f64)
}

impl<T: Scalar, const N: usize> Add for Jet<T, N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x = *x + y;
        }
        Jet(a)
    }
}

impl<T: Scalar, const N: usize> Sub for Jet<T, N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x = *x - y;
        }
        Jet(a)
    }
}

impl<T: Scalar, const N: usize> Neg for Jet<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet(self.0.map(|x| -x))
    }
}

impl<T: Scalar, const N: usize> Mul for Jet<T, N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [T::zero(); N];
        for i in 0..N {
            for j in 0..N - i {
                c[i + j] = c[i + j] + self.0[i] * o.0[j];
            }
        }
        Jet(c)
    }
}
