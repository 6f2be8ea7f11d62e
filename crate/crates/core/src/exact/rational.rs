use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::ring::{Domain, Field, Ring};
use crate::exact::{exact_determinant, Matrix};
use num_integer::Integer;

/// Arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Degenerate("rational denominator".into()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Nearest `f64`; only for the simulator and reporting, never for exact checks.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact square root when both numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &n * &n == *self.numer() && &d * &d == *self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('\u{2212}', "-");
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::from_bigints(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        Rational(self.0 + o.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        Rational(self.0 - o.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        Rational(self.0 * o.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl Domain for Rational {
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.div(divisor)
    }

    /// Clear row denominators, then fraction-free elimination over `BigInt`.
    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        if m.rows() != m.cols() {
            return exact_determinant(m);
        }
        let n = m.rows();
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = m.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let det = bareiss_int(rows);
        Rational::from_bigints(det, scale)
    }
}

fn bareiss_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

impl Field for Rational {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Degenerate("division by zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    fn from_rational(r: Rational) -> Self {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-7", "3/5", "-12/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rational>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn division_by_zero_is_error() {
        assert!(Rational::zero().inv().is_err());
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(Rational::new(9, 4).sqrt_exact(), Some(Rational::new(3, 2)));
        assert_eq!(Rational::new(2, 1).sqrt_exact(), None);
    }

    #[test]
    fn json_is_string() {
        let j = serde_json::to_string(&Rational::new(-1, 3)).unwrap();
        assert_eq!(j, "\"-1/3\"");
        let back: Rational = serde_json::from_str(&j).unwrap();
        assert_eq!(back, Rational::new(-1, 3));
    }
}
