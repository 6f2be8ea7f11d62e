use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::ring::Ring;

/// Polynomial in `y` truncated above degree `r_max`.
///
/// `r_max = None` marks an untruncated value (constants built through
/// [`Ring::zero`]/[`Ring::one`]); combining two series keeps the smaller
/// truncation order, so mixing constants into truncated arithmetic is safe.
#[derive(Clone, PartialEq, Debug)]
pub struct SeriesY<R> {
    coeffs: Vec<R>,
    r_max: Option<usize>,
}

impl<R: Ring> SeriesY<R> {
    pub fn new(coeffs: Vec<R>, r_max: usize) -> Self {
        Self::normalize(coeffs, Some(r_max))
    }

    pub fn constant(c: R, r_max: usize) -> Self {
        Self::new(vec![c], r_max)
    }

    /// `c·y`
    pub fn linear(c: R, r_max: usize) -> Self {
        Self::new(vec![R::zero(), c], r_max)
    }

    fn normalize(mut coeffs: Vec<R>, r_max: Option<usize>) -> Self {
        if let Some(m) = r_max {
            coeffs.truncate(m + 1);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SeriesY { coeffs, r_max }
    }

    pub fn r_max(&self) -> Option<usize> {
        self.r_max
    }

    /// `[y^r]`
    pub fn coeff(&self, r: usize) -> R {
        if let Some(m) = self.r_max {
            assert!(r <= m, "coefficient y^{r} lies beyond truncation order {m}");
        }
        self.coeffs.get(r).cloned().unwrap_or_else(R::zero)
    }

    fn join(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

impl<R: Ring> Add for SeriesY<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let r_max = Self::join(self.r_max, o.r_max);
        let n = self.coeffs.len().max(o.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(R::zero);
                let b = o.coeffs.get(i).cloned().unwrap_or_else(R::zero);
                a + b
            })
            .collect();
        Self::normalize(out, r_max)
    }
}

impl<R: Ring> Sub for SeriesY<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Neg for SeriesY<R> {
    type Output = Self;
    fn neg(self) -> Self {
        SeriesY {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            r_max: self.r_max,
        }
    }
}

impl<R: Ring> Mul for SeriesY<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let r_max = Self::join(self.r_max, o.r_max);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return SeriesY { coeffs: Vec::new(), r_max };
        }
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if let Some(m) = r_max {
            len = len.min(m + 1);
        }
        let mut out = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::normalize(out, r_max)
    }
}

/// Equality ignores the truncation tag; values are compared coefficientwise.
impl<R: Ring> Ring for SeriesY<R> {
    fn zero() -> Self {
        SeriesY { coeffs: Vec::new(), r_max: None }
    }
    fn one() -> Self {
        SeriesY { coeffs: vec![R::one()], r_max: None }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        Self::normalize(vec![R::from_i64(n)], None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn truncated_product() {
        // (1 + y)^5 truncated at y^2 has coefficients 1, 5, 10
        let s = SeriesY::new(vec![Rational::one(), Rational::one()], 2);
        let mut acc = SeriesY::<Rational>::one();
        for _ in 0..5 {
            acc = acc * s.clone();
        }
        assert_eq!(acc.r_max(), Some(2));
        assert_eq!(acc.coeff(0), Rational::integer(1));
        assert_eq!(acc.coeff(1), Rational::integer(5));
        assert_eq!(acc.coeff(2), Rational::integer(10));
    }

    #[test]
    #[should_panic]
    fn extraction_beyond_order_panics() {
        let s = SeriesY::constant(Rational::one(), 1);
        let _ = s.coeff(2);
    }
}
