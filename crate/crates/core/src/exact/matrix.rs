use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::exact::ring::{Domain, Field, Ring};

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<R>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &o[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + o[(i, j)].clone()
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - o[(i, j)].clone()
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * c.clone())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Top-left `n×m` block.
    pub fn top_left(&self, n: usize, m: usize) -> Self {
        Self::from_fn(n, m, |i, j| self[(i, j)].clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn check_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

/// Solve `M x = b` by Gauss–Jordan elimination; a singular system is an error.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Result<Vec<F>> {
    let n = m.check_square()?;
    if b.len() != n {
        return Err(Error::Precondition(format!("right-hand side has length {}, expected {n}", b.len())));
    }
    let mut a = m.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !a[(i, k)].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {k}")))?;
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            x.swap(k, p);
        }
        let inv = a[(k, k)].inv()?;
        for j in k..n {
            a[(k, j)] = a[(k, j)].clone() * inv.clone();
        }
        x[k] = x[k].clone() * inv;
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in k..n {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
            }
            x[i] = x[i].clone() - f * x[k].clone();
        }
    }
    Ok(x)
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Every division performed is exact over an integral domain, so this works
/// for scalars and for polynomial entries alike.
pub fn exact_determinant<R: Domain>(m: &Matrix<R>) -> Result<R> {
    let n = m.check_square()?;
    if n == 0 {
        return Ok(R::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    for j in 0..n {
                        a.data.swap(k * n + j, p * n + j);
                    }
                    negate = !negate;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)].clone() * a[(k, k)].clone()
                    - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = num.exact_div(&prev)?;
            }
            a[(i, k)] = R::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

/// Determinant by Laplace expansion along rows, memoized over column subsets.
/// Needs only ring operations; `O(n·2^n)` products, fine up to about 12×12.
pub fn cofactor_determinant<R: Ring>(m: &Matrix<R>) -> Result<R> {
    let n = m.check_square()?;
    if n == 0 {
        return Ok(R::one());
    }
    // minors[mask] = det of the bottom |mask| rows restricted to columns in mask
    let full = 1usize << n;
    let mut minors: Vec<Option<R>> = vec![None; full];
    minors[0] = Some(R::one());
    for mask in 1..full {
        let size = mask.count_ones() as usize;
        let row = n - size;
        let mut acc = R::zero();
        let mut sign_pos = true;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &m[(row, col)];
            if !entry.is_zero() {
                let sub = minors[mask & !(1 << col)].clone().expect("filled in order");
                let term = entry.clone() * sub;
                acc = if sign_pos { acc + term } else { acc - term };
            }
            sign_pos = !sign_pos;
        }
        minors[mask] = Some(acc);
    }
    Ok(minors[full - 1].take().expect("full minor"))
}
