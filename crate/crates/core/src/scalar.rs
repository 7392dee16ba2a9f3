//! Coefficient backends.
//!
//! Two scalar types back every series in the crate: exact rationals
//! ([`BigRational`], always in lowest terms with a positive denominator)
//! and double-precision complex numbers ([`Complex64`]). Mixing them is a
//! type error; [`crate::series::TruncatedSeries::to_float`] is the only
//! promotion path.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn conj(&self) -> Self;

    fn to_complex(&self) -> Complex64;

    fn is_finite(&self) -> bool;

    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl Coeff for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Coeff for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }
}

/// Shorthand for an exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

/// Renders an exact value as `p/q`, keeping `/1` for integers.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Round-trip formatting with 17 significant digits.
pub fn float_string(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let a = rat(6, -8);
        assert!(a.denom() > &BigInt::zero());
        assert_eq!(a, rat(-3, 4));
        assert_eq!(rational_string(&a), "-3/4");
        assert_eq!(rational_string(&(a.clone() - a)), "0/1");
    }

    #[test]
    fn float_string_round_trips() {
        for x in [12.0, 1.0 / 36.0, -0.1, 2.4378, 1e-300] {
            let s = float_string(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn finiteness_per_backend() {
        assert!(Coeff::is_finite(&rat(1, 3)));
        assert!(!Coeff::is_finite(&Complex64::new(f64::NAN, 0.0)));
        assert!(!Coeff::is_finite(&Complex64::new(0.0, f64::INFINITY)));
    }
}
