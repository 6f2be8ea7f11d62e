use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ring::{Domain, Field, Ring};
use crate::exact::Rational;

/// Element `re + im·i` of the Gaussian rationals ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn imag(im: Rational) -> Self {
        GaussianRational::new(Rational::zero(), im)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> Rational {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => {
                write!(f, "{}-{}i", self.re, self.im.abs())
            }
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::real(Rational::zero())
    }
    fn one() -> Self {
        GaussianRational::real(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        GaussianRational::real(Rational::integer(n))
    }
}

impl Domain for GaussianRational {
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.div(divisor)
    }
}

impl Field for GaussianRational {
    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Degenerate("division by zero".into()));
        }
        let n_inv = n.inv()?;
        Ok(GaussianRational::new(
            self.re.clone() * n_inv.clone(),
            -self.im.clone() * n_inv,
        ))
    }

    fn from_rational(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i, -GaussianRational::one());
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = GaussianRational::new(Rational::new(1, 2), Rational::new(-3, 4));
        assert_eq!(z.clone() * z.inv().unwrap(), GaussianRational::one());
        assert_eq!(
            z.clone() * z.conj(),
            GaussianRational::real(z.norm())
        );
    }

    #[test]
    fn display() {
        let z = GaussianRational::new(Rational::new(1, 2), Rational::new(-3, 4));
        assert_eq!(z.to_string(), "1/2-3/4i");
        assert_eq!(GaussianRational::i().to_string(), "1i");
    }

    #[test]
    fn json_shape() {
        let z = GaussianRational::new(Rational::new(1, 2), Rational::integer(3));
        assert_eq!(
            serde_json::to_string(&z).unwrap(),
            r#"{"re":"1/2","im":"3"}"#
        );
    }
}
