use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::exact::{Matrix, Ring};

type Generator<R> = dyn Fn(usize, usize) -> Result<R> + Send + Sync;

/// An infinite matrix indexed by the nonnegative integers whose nonzero
/// entries lie within a fixed band, generated lazily from `(row, col)`.
#[derive(Clone)]
pub struct BandOperator<R> {
    lower: usize,
    upper: usize,
    gen: Arc<Generator<R>>,
}

impl<R: Ring> BandOperator<R> {
    /// `gen` is only consulted inside the band.
    pub fn new(
        lower: usize,
        upper: usize,
        gen: impl Fn(usize, usize) -> Result<R> + Send + Sync + 'static,
    ) -> Self {
        BandOperator { lower, upper, gen: Arc::new(gen) }
    }

    /// Tridiagonal operator from diagonal, super- and sub-diagonal sequences:
    /// `(n, n)`, `(n, n+1)`, `(n+1, n)`.
    pub fn tridiagonal(
        nat: impl Fn(usize) -> Result<R> + Send + Sync + 'static,
        sharp: impl Fn(usize) -> Result<R> + Send + Sync + 'static,
        flat: impl Fn(usize) -> Result<R> + Send + Sync + 'static,
    ) -> Self {
        Self::new(1, 1, move |i, j| {
            if i == j {
                nat(i)
            } else if j == i + 1 {
                sharp(i)
            } else {
                flat(j)
            }
        })
    }

    pub fn identity() -> Self {
        Self::new(0, 0, |_, _| Ok(R::one()))
    }

    pub fn zero() -> Self {
        Self::new(0, 0, |_, _| Ok(R::zero()))
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn in_band(&self, i: usize, j: usize) -> bool {
        j <= i + self.upper && i <= j + self.lower
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<R> {
        if self.in_band(i, j) {
            (self.gen)(i, j)
        } else {
            Ok(R::zero())
        }
    }

    /// Columns that can be nonzero in row `i`.
    pub fn row_support(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        i.saturating_sub(self.lower)..=i + self.upper
    }

    /// Top-left `dim × dim` block.
    pub fn truncate(&self, dim: usize) -> Result<Matrix<R>> {
        Matrix::try_from_fn(dim, dim, |i, j| self.entry(i, j))
    }

    pub fn scale(&self, c: R) -> Self {
        let me = self.clone();
        Self::new(self.lower, self.upper, move |i, j| Ok(c.clone() * me.entry(i, j)?))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = (self.clone(), o.clone());
        Self::new(self.lower.max(o.lower), self.upper.max(o.upper), move |i, j| {
            Ok(a.entry(i, j)? + b.entry(i, j)?)
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-R::one()))
    }

    /// Exact product of the infinite operators; the band widths add.
    pub fn product(&self, o: &Self) -> Self {
        let (a, b) = (self.clone(), o.clone());
        Self::new(self.lower + o.lower, self.upper + o.upper, move |i, j| {
            let lo = i.saturating_sub(a.lower).max(j.saturating_sub(b.upper));
            let hi = (i + a.upper).min(j + b.lower);
            let mut acc = R::zero();
            for k in lo..=hi {
                let x = a.entry(i, k)?;
                if x.is_zero() {
                    continue;
                }
                acc = acc + x * b.entry(k, j)?;
            }
            Ok(acc)
        })
    }

    /// Commutator `self·o - o·self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.product(o).sub(&o.product(self))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(R) -> S + Send + Sync + 'static) -> BandOperator<S> {
        let me = self.clone();
        BandOperator::new(self.lower, self.upper, move |i, j| Ok(f(me.entry(i, j)?)))
    }

    /// Memoize entries. Worth it for operators built from products.
    pub fn cached(&self) -> Self {
        let me = self.clone();
        let memo: Mutex<HashMap<(usize, usize), R>> = Mutex::new(HashMap::new());
        Self::new(self.lower, self.upper, move |i, j| {
            if let Some(v) = memo.lock().expect("memo lock").get(&(i, j)) {
                return Ok(v.clone());
            }
            let v = me.entry(i, j)?;
            memo.lock().expect("memo lock").insert((i, j), v.clone());
            Ok(v)
        })
    }

    /// Same entries with a corrupted value at `(i, j)`; used by negative
    /// controls of the relation checker.
    pub fn with_entry(&self, i: usize, j: usize, value: R) -> Self {
        let me = self.clone();
        let lower = self.lower.max(i.saturating_sub(j));
        let upper = self.upper.max(j.saturating_sub(i));
        Self::new(lower, upper, move |r, c| {
            if (r, c) == (i, j) {
                Ok(value.clone())
            } else {
                me.entry(r, c)
            }
        })
    }
}

impl<R> fmt::Debug for BandOperator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BandOperator(lower={}, upper={})", self.lower, self.upper)
    }
}
