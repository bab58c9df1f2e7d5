//! Scalar backends: exact rationals and `f64`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers. Every quantity in the algebraic layers has small
/// numerators and denominators, so 128-bit integers are plenty.
pub type Rational = num_rational::Ratio<i128>;

/// Field operations shared by the exact and floating backends.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    /// `true` for error-free arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_frac(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Exactly zero on the rational backend, below `1e-12` in magnitude on
    /// the float backend. Used for pivoting.
    fn negligible(&self) -> bool;

    /// Real `n`-th root, if it exists in this field.
    fn nth_root(&self, n: u32) -> Option<Self>;

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n as i128)
    }
    fn from_frac(num: i64, den: i64) -> Self {
        Rational::new(num as i128, den as i128)
    }
    fn to_f64(&self) -> f64 {
        self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
    }
    fn negligible(&self) -> bool {
        self.is_zero()
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        if self.is_negative() {
            if n % 2 == 0 {
                return None;
            }
            return (-*self).nth_root(n).map(|r| -r);
        }
        let num = int_root(*self.numer(), n)?;
        let den = int_root(*self.denom(), n)?;
        Some(Rational::new(num, den))
    }
}

fn int_root(x: i128, n: u32) -> Option<i128> {
    if x < 2 {
        return Some(x);
    }
    let guess = (x as f64).powf(1.0 / n as f64).round() as i128;
    (guess.saturating_sub(1)..=guess + 1)
        .find(|r| *r >= 0 && r.checked_pow(n) == Some(x))
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_frac(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn negligible(&self) -> bool {
        self.abs() < 1e-12
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        if *self < 0.0 {
            if n % 2 == 0 {
                None
            } else {
                Some(-(-self).powf(1.0 / n as f64))
            }
        } else {
            Some(self.powf(1.0 / n as f64))
        }
    }
}

/// Shorthand for `S::from_frac`.
pub fn frac<S: Scalar>(num: i64, den: i64) -> S {
    S::from_frac(num, den)
}

/// Shorthand for `S::from_int`.
pub fn int<S: Scalar>(n: i64) -> S {
    S::from_int(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots() {
        let x = Rational::new(512, 27);
        assert_eq!(x.nth_root(3), Some(Rational::new(8, 3)));
        assert_eq!(Rational::new(2, 1).nth_root(3), None);
        assert_eq!(Rational::new(-8, 1).nth_root(3), Some(Rational::from_integer(-2)));
    }

    #[test]
    fn float_roots() {
        assert!((8.0f64.nth_root(3).unwrap() - 2.0).abs() < 1e-12);
        assert!((-8.0f64).nth_root(2).is_none());
    }
}
