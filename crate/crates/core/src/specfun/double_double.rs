//! Unevaluated-sum (double-double) arithmetic, ~106-bit significand.
//!
//! Only the handful of operations the closed-form propagator needs.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact for every `u128` below 2^106, correctly split above.
    pub fn from_u128(x: u128) -> Self {
        let hi = x as f64;
        let rem = x as i128 - hi as i128;
        let (hi, lo) = quick_two_sum(hi, rem as f64);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn recip(self) -> Self {
        // one Newton step on 1/hi
        let q = 1.0 / self.hi;
        let r = Self::ONE - self * Self::from_f64(q);
        Self::from_f64(q) + r * Self::from_f64(q)
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::ZERO;
        }
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * s);
        let (hi, lo) = quick_two_sum(s, r);
        Self { hi, lo }
    }

    pub fn scale_pow2(self, exp: i32) -> Self {
        let f = 2f64.powi(exp);
        Self {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct ComplexDd {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDd {
    pub const ONE: Self = Self {
        re: DoubleDouble::ONE,
        im: DoubleDouble::ZERO,
    };

    pub fn from_complex(z: Complex64) -> Self {
        Self {
            re: DoubleDouble::from_f64(z.re),
            im: DoubleDouble::from_f64(z.im),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, s: DoubleDouble) -> Self {
        Self {
            re: self.re * s,
            im: self.im * s,
        }
    }

    /// `self^n`, by repeated squaring.
    pub fn powu(self, mut n: usize) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }
}

impl Add for ComplexDd {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexDd {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexDd {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_bits_lost_in_f64() {
        // (1 + 2^-60) - 1 vanishes in f64 but not here
        let a = DoubleDouble::ONE + DoubleDouble::from_f64(2f64.powi(-60));
        let d = a - DoubleDouble::ONE;
        assert_eq!(d.to_f64(), 2f64.powi(-60));
    }

    #[test]
    fn sqrt_and_recip() {
        let two = DoubleDouble::from_f64(2.0);
        let s = two.sqrt();
        let back = s * s - two;
        assert!(back.to_f64().abs() < 1e-30);
        let third = DoubleDouble::from_f64(3.0).recip();
        let err = third * DoubleDouble::from_f64(3.0) - DoubleDouble::ONE;
        assert!(err.to_f64().abs() < 1e-30);
    }

    #[test]
    fn exact_integer_split() {
        let x: u128 = (1u128 << 90) + 12345;
        let d = DoubleDouble::from_u128(x);
        assert_eq!(d.hi as u128 as i128 + d.lo as i128, x as i128);
    }

    #[test]
    fn complex_power() {
        let z = ComplexDd::from_complex(Complex64::new(0.0, 1.0));
        assert_eq!(z.powu(4).to_complex(), Complex64::new(1.0, 0.0));
        assert_eq!(z.powu(3).to_complex(), Complex64::new(0.0, -1.0));
    }
}
