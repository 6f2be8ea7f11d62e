//! q-integers and Gaussian binomial coefficients.
//!
//! Everything here is division-free so it specializes cleanly at q = 1 and at
//! roots of unity. Pass `Poly::var()` as `q` to get formal polynomials in q.

use crate::error::{Error, Result};
use crate::exact::ring::{Field, Ring};

/// `[k]_q = 1 + q + ... + q^{k-1}`
pub fn q_int<R: Ring>(k: usize, q: &R) -> R {
    let mut acc = R::zero();
    let mut pow = R::one();
    for _ in 0..k {
        acc = acc + pow.clone();
        pow = pow * q.clone();
    }
    acc
}

/// Gaussian binomial `[n, k]_q`, zero outside `0 ≤ k ≤ n`.
///
/// Computed with the Pascal rule `[n,k] = [n-1,k] + q^{n-k}·[n-1,k-1]`.
pub fn q_binomial<R: Ring>(n: i64, k: i64, q: &R) -> R {
    if n < 0 || k < 0 || k > n {
        return R::zero();
    }
    let (n, k) = (n as usize, k as usize);
    // row[j] = [m, j] for the current m; only j ≤ k matters
    let mut row = vec![R::zero(); k + 1];
    row[0] = R::one();
    let mut qpow = vec![R::one()];
    for _ in 0..n {
        let last = qpow.last().cloned().unwrap();
        qpow.push(last * q.clone());
    }
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            let shifted = qpow[m - j].clone() * row[j - 1].clone();
            row[j] = row[j].clone() + shifted;
        }
    }
    row[k].clone()
}

/// Gaussian binomial in base `1/q`, via `[n,k]_{1/q} = q^{-k(n-k)}·[n,k]_q`.
pub fn q_binomial_inv_base<F: Field>(n: i64, k: i64, q: &F) -> Result<F> {
    if q.is_zero() {
        return Err(Error::precondition("base-1/q binomial needs q ≠ 0"));
    }
    if n < 0 || k < 0 || k > n {
        return Ok(F::zero());
    }
    let shift = q.powi(-(k * (n - k)))?;
    Ok(q_binomial(n, k, q) * shift)
}

/// Ordinary binomial coefficient as an `i64`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}
