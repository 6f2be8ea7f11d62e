use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ring::{Domain, Field, Ring};
use crate::exact::{cofactor_determinant, Matrix, Rational};

/// Dense univariate polynomial with ascending coefficients.
///
/// Canonical form has no trailing zero coefficient; the zero polynomial is the
/// empty list. The variable name is attached only when serializing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·t^deg`
    pub fn monomial(c: R, deg: usize) -> Self {
        let mut coeffs = vec![R::zero(); deg];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    /// `a + b·t`
    pub fn linear(a: R, b: R) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// `p(c·t)`
    pub fn rescale_var(&self, c: &R) -> Self {
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x.clone() * pow.clone());
            pow = pow * c.clone();
        }
        Self::from_coeffs(out)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Truncate to terms of degree `< len`.
    pub fn truncated(&self, len: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(len).cloned().collect())
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Degenerate("zero polynomial divisor".into()))?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[k] = c;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn with_var_name(&self, var: &str) -> TaggedPoly<F>
    where
        F: Serialize,
    {
        TaggedPoly {
            var: var.to_string(),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self.coeffs, o.coeffs)
        } else {
            (o.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::from_coeffs(long)
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }
}

impl<F: Field> Domain for Poly<F> {
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!(
                "polynomial division left remainder {r}"
            )));
        }
        Ok(q)
    }

    /// Evaluate at `deg + 1` integer points and interpolate, where `deg`
    /// bounds the determinant's degree by the row-wise maximal entry degrees.
    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        if m.rows() != m.cols() {
            return cofactor_determinant(m);
        }
        let Some(bound) = degree_bound(m) else {
            return Ok(Self::zero());
        };
        let xs: Vec<F> = (0..=bound as i64).map(|k| F::from_rational(Rational::integer(k))).collect();
        let ys = xs
            .iter()
            .map(|x| F::determinant(&m.map(|p| p.eval(x))))
            .collect::<Result<Vec<F>>>()?;
        Poly::interpolate(&xs, &ys)
    }
}

/// Largest `Σ_i deg m[i][σ(i)]` over permutations with all entries nonzero,
/// by a max-plus version of the subset recursion; `None` if every term vanishes.
fn degree_bound<F: Field>(m: &Matrix<Poly<F>>) -> Option<usize> {
    let n = m.rows();
    let mut best: Vec<Option<usize>> = vec![None; 1 << n];
    best[0] = Some(0);
    for mask in 1usize..1 << n {
        let row = n - mask.count_ones() as usize;
        best[mask] = (0..n)
            .filter(|&c| mask & (1 << c) != 0)
            .filter_map(|c| Some(best[mask & !(1 << c)]? + m[(row, c)].degree()?))
            .max();
    }
    best[(1 << n) - 1]
}

impl<F: Field> Poly<F> {
    /// The unique polynomial of degree `< xs.len()` through the given points
    /// (Newton divided differences).
    pub fn interpolate(xs: &[F], ys: &[F]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::precondition("interpolation needs as many values as nodes"));
        }
        let n = xs.len();
        let mut c = ys.to_vec();
        for k in 1..n {
            for i in (k..n).rev() {
                let den = xs[i].clone() - xs[i - k].clone();
                c[i] = (c[i].clone() - c[i - 1].clone()).checked_div(&den, "repeated interpolation node")?;
            }
        }
        // Horner from the top divided difference
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            acc = acc * Poly::linear(-xs[i].clone(), F::one()) + Poly::constant(c[i].clone());
        }
        Ok(acc)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

/// JSON shape `{"var": "xi", "coeffs": [...ascending...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedPoly<F> {
    pub var: String,
    pub coeffs: Vec<F>,
}

impl<F: Field> TaggedPoly<F> {
    pub fn into_poly(self) -> Poly<F> {
        Poly::from_coeffs(self.coeffs)
    }
}
