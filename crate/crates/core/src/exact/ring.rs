use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{cofactor_determinant, Matrix, Rational};

/// A commutative ring with exact, decidable equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if n >= 0 { Self::one() } else { -Self::one() };
        for _ in 0..n.unsigned_abs() {
            acc = acc + unit.clone();
        }
        acc
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut e = exp;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// An integral domain in which divisions known to be exact can be carried out.
/// Used by fraction-free elimination.
pub trait Domain: Ring {
    fn exact_div(&self, divisor: &Self) -> Result<Self>;

    /// Determinant of a square matrix over the domain.
    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        cofactor_determinant(m)
    }
}

/// An exact scalar field.
pub trait Field: Domain + Display {
    fn inv(&self) -> Result<Self>;
    fn from_rational(r: Rational) -> Self;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    /// Integer power allowing negative exponents.
    fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u32))
        } else {
            self.inv().map(|x| x.pow((-exp) as u32))
        }
    }

    /// `self / den`, reporting `what` when the denominator vanishes.
    fn checked_div(&self, den: &Self, what: &str) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::degenerate(what));
        }
        self.div(den)
    }
}
