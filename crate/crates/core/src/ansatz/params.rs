use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Field, Rational, Ring};

/// Boundary rates of the open ASEP.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rates<F> {
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
    pub delta: F,
    pub q: F,
}

/// A point `(a, b, c, d, q)` of the representation, with derived rates and a
/// certified genericity horizon.
///
/// Construction validates every denominator that an operator entry with
/// index `≤ horizon` can produce, so later evaluation never divides by zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamPoint<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub q: F,
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
    pub delta: F,
    pub horizon: usize,
}

pub const DEFAULT_HORIZON: usize = 24;

impl<F: Field> ParamPoint<F> {
    pub fn new(a: F, b: F, c: F, d: F, q: F) -> Result<Self> {
        Self::with_horizon(a, b, c, d, q, DEFAULT_HORIZON)
    }

    pub fn with_horizon(a: F, b: F, c: F, d: F, q: F, horizon: usize) -> Result<Self> {
        if (F::one() - q.clone()).is_zero() {
            return Err(Error::degenerate("1 - q"));
        }
        let rates = derive_open_boundary_rates(&a, &b, &c, &d, &q)?;
        let p = ParamPoint {
            a,
            b,
            c,
            d,
            q,
            alpha: rates.alpha,
            beta: rates.beta,
            gamma: rates.gamma,
            delta: rates.delta,
            horizon,
        };
        p.certify(horizon)?;
        Ok(p)
    }

    /// Same point, re-certified for a larger horizon.
    pub fn extend_horizon(&self, horizon: usize) -> Result<Self> {
        let mut p = self.clone();
        if horizon > p.horizon {
            p.certify(horizon)?;
            p.horizon = horizon;
        }
        Ok(p)
    }

    fn certify(&self, horizon: usize) -> Result<()> {
        let one = F::one();
        let ac = self.a.clone() * self.c.clone();
        let bd = self.b.clone() * self.d.clone();
        let abcd = ac.clone() * bd.clone();
        let mut qn = one.clone();
        for n in 0..=horizon {
            if (one.clone() - qn.clone() * ac.clone()).is_zero() {
                return Err(Error::degenerate(format!("1 - q^{n}·ac")));
            }
            if (one.clone() - qn.clone() * bd.clone()).is_zero() {
                return Err(Error::degenerate(format!("1 - q^{n}·bd")));
            }
            qn = qn * self.q.clone();
        }
        // abcd appears with shifts up to q^{2n+1}
        let mut qk = one.clone();
        for k in 0..=2 * horizon + 1 {
            if (one.clone() - qk.clone() * abcd.clone()).is_zero() {
                return Err(Error::degenerate(format!("1 - q^{k}·abcd")));
            }
            qk = qk * self.q.clone();
        }
        Ok(())
    }

    pub fn rates(&self) -> Rates<F> {
        Rates {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
            delta: self.delta.clone(),
            q: self.q.clone(),
        }
    }

    pub fn ac(&self) -> F {
        self.a.clone() * self.c.clone()
    }

    pub fn bd(&self) -> F {
        self.b.clone() * self.d.clone()
    }

    pub fn abcd(&self) -> F {
        self.ac() * self.bd()
    }

    /// Map every scalar into another field (e.g. ℚ → ℚ(i)).
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<ParamPoint<G>> {
        ParamPoint::with_horizon(
            f(&self.a),
            f(&self.b),
            f(&self.c),
            f(&self.d),
            f(&self.q),
            self.horizon,
        )
    }
}

/// `α = (1-q)/(1+ac+a+c)`, `γ = -(1-q)ac/(1+ac+a+c)` and the mirror pair for
/// `β, δ` in `(b, d)`.
pub fn derive_open_boundary_rates<F: Field>(a: &F, b: &F, c: &F, d: &F, q: &F) -> Result<Rates<F>> {
    let one = F::one();
    let omq = one.clone() - q.clone();
    let left = one.clone() + a.clone() * c.clone() + a.clone() + c.clone();
    let right = one + b.clone() * d.clone() + b.clone() + d.clone();
    if left.is_zero() {
        return Err(Error::degenerate("1 + ac + a + c"));
    }
    if right.is_zero() {
        return Err(Error::degenerate("1 + bd + b + d"));
    }
    let li = left.inv()?;
    let ri = right.inv()?;
    Ok(Rates {
        alpha: omq.clone() * li.clone(),
        gamma: -(omq.clone() * a.clone() * c.clone() * li),
        beta: omq.clone() * ri.clone(),
        delta: -(omq * b.clone() * d.clone() * ri),
        q: q.clone(),
    })
}

/// The two roots `(a, c)` of the quadratic relating `(α, γ, q)` to the
/// representation parameters, when its discriminant is a rational square.
///
/// `α·t² - (1-q-α+γ)·t - γ = 0`; the `+` root is `a`, the `-` root is `c`.
pub fn invert_rates(
    alpha: &Rational,
    gamma: &Rational,
    q: &Rational,
) -> Result<Option<(Rational, Rational)>> {
    if alpha.is_zero() {
        return Err(Error::degenerate("alpha"));
    }
    let s = Rational::one() - q.clone() - alpha.clone() + gamma.clone();
    let disc = s.clone() * s.clone() + Rational::integer(4) * alpha.clone() * gamma.clone();
    let Some(root) = disc.sqrt_exact() else {
        return Ok(None);
    };
    let two_alpha = Rational::integer(2) * alpha.clone();
    let plus = (s.clone() + root.clone()).div(&two_alpha)?;
    let minus = (s - root).div(&two_alpha)?;
    Ok(Some((plus, minus)))
}
