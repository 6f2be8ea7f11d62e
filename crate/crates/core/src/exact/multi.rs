use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::ring::Ring;
use crate::exact::Rational;

/// Exponent vector over four variables.
pub type Monomial = [u32; 4];

/// Sparse polynomial in four variables with rational coefficients.
///
/// Used for the coefficient identities in (a, b, c, d) and for the
/// positivity expansion in (α, β, γ, δ). Not a general CAS.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly4 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly4 {
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::term(Rational::one(), e)
    }

    pub fn term(c: Rational, exps: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly4 { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, [0; 4])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Monomial) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = t * x.pow(k);
            }
            acc + t
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Poly4::default();
        for (e, v) in &self.terms {
            out.add_term(*e, v.clone() * c.clone());
        }
        out
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl Add for Poly4 {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (e, c) in o.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for Poly4 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Poly4 {
    type Output = Self;
    fn neg(self) -> Self {
        Poly4 {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for Poly4 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Poly4::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl Ring for Poly4 {
    fn zero() -> Self {
        Poly4::default()
    }
    fn one() -> Self {
        Poly4::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        Poly4::constant(Rational::integer(n))
    }
}

impl fmt::Display for Poly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["x0", "x1", "x2", "x3"];
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, &k) in names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_square() {
        let x = Poly4::var(0);
        let y = Poly4::var(1);
        let s = (x.clone() + y.clone()) * (x.clone() + y.clone());
        assert_eq!(s.len(), 3);
        assert_eq!(s.coeff(&[1, 1, 0, 0]), Rational::integer(2));
        assert!((s.clone() - s).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = Poly4::var(0) * Poly4::var(3) + Poly4::constant(Rational::integer(2));
        let pt = [
            Rational::integer(3),
            Rational::zero(),
            Rational::zero(),
            Rational::new(1, 3),
        ];
        assert_eq!(p.eval(&pt), Rational::integer(3));
    }
}
