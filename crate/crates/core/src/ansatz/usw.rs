//! The tridiagonal matrices `𝖽`, `𝖾` of the Uchiyama–Sasamoto–Wadati solution.

use serde::Serialize;

use crate::ansatz::params::ParamPoint;
use crate::error::{Error, Result};
use crate::exact::Field;

/// Entries of row/column `n`: diagonal `♮`, super-diagonal `♯` at `(n, n+1)`,
/// sub-diagonal `♭` at `(n+1, n)`, and the shared factor `𝒜_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UswEntries<F> {
    pub d_nat: F,
    pub d_sharp: F,
    pub d_flat: F,
    pub e_nat: F,
    pub e_sharp: F,
    pub e_flat: F,
    pub big_a: F,
}

fn one_minus<F: Field>(x: F) -> F {
    F::one() - x
}

/// Canonical entries. At `n = 0` the diagonal entries and `𝒜₀` are taken in
/// their cancelled form, which has no `q^{-1}` and so also holds at `q = 0`:
///
/// * `d♮₀ = ((b+d) - bd(a+c)) / (1-abcd)`
/// * `e♮₀ = ((a+c) - ac(b+d)) / (1-abcd)`
/// * `𝒜₀ = (1-q)(1-ab)(1-ac)(1-ad)(1-bc)(1-bd)(1-cd) / ((1-abcd)²(1-q·abcd))`
pub fn usw_entries<F: Field>(p: &ParamPoint<F>, n: usize) -> Result<UswEntries<F>> {
    if n > p.horizon {
        return Err(Error::HorizonExceeded { index: n, horizon: p.horizon });
    }
    if n > 0 {
        return printed_entries(p, n);
    }
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let abcd = p.abcd();
    let ac = p.ac();
    let bd = p.bd();
    let den = one_minus(abcd.clone());
    let d_nat = ((b.clone() + d.clone()) - bd.clone() * (a.clone() + c.clone()))
        .checked_div(&den, "1 - abcd")?;
    let e_nat = ((a.clone() + c.clone()) - ac.clone() * (b.clone() + d.clone()))
        .checked_div(&den, "1 - abcd")?;
    let num = one_minus(q.clone())
        * one_minus(a.clone() * b.clone())
        * one_minus(ac.clone())
        * one_minus(a.clone() * d.clone())
        * one_minus(b.clone() * c.clone())
        * one_minus(bd.clone())
        * one_minus(c.clone() * d.clone());
    let big_a = num.checked_div(
        &(den.clone() * den * one_minus(q.clone() * abcd)),
        "(1 - abcd)²(1 - q·abcd)",
    )?;
    let pair = one_minus(ac.clone()) * one_minus(bd.clone());
    Ok(UswEntries {
        d_nat,
        d_sharp: F::one(),
        d_flat: (-(bd * big_a.clone())).checked_div(&pair, "(1 - ac)(1 - bd)")?,
        e_nat,
        e_sharp: -ac,
        e_flat: big_a.checked_div(&pair, "(1 - ac)(1 - bd)")?,
        big_a,
    })
}

/// Entries exactly as printed, with the global `q^{n-1}` factor on the
/// diagonal. At `n = 0` this needs `q ≠ 0`; use [`usw_entries`] there.
pub fn printed_entries<F: Field>(p: &ParamPoint<F>, n: usize) -> Result<UswEntries<F>> {
    if n == 0 && p.q.is_zero() {
        return Err(Error::precondition(
            "printed d♮₀ and e♮₀ carry q^{-1}; at q = 0 use the cancelled form",
        ));
    }
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let n_i = n as i64;
    let qp = |k: i64| q.powi(k);
    let abcd = p.abcd();
    let ac = p.ac();
    let bd = p.bd();
    let apc = a.clone() + c.clone();
    let bpd = b.clone() + d.clone();

    let diag_den = one_minus(qp(2 * n_i - 2)? * abcd.clone()) * one_minus(qp(2 * n_i)? * abcd.clone());
    let pre = qp(n_i - 1)?.checked_div(&diag_den, "(1 - q^{2n-2}abcd)(1 - q^{2n}abcd)")?;

    let d_br = bd.clone() * apc.clone() + bpd.clone() * q.clone()
        - abcd.clone() * bpd.clone() * qp(n_i - 1)?
        - (bd.clone() * apc.clone() + abcd.clone() * bpd.clone()) * qp(n_i)?
        - bd.clone() * apc.clone() * qp(n_i + 1)?
        + a.clone() * b.clone() * b.clone() * c.clone() * d.clone() * d.clone() * apc.clone() * qp(2 * n_i - 1)?
        + abcd.clone() * bpd.clone() * qp(2 * n_i)?;
    let e_br = ac.clone() * bpd.clone() + apc.clone() * q.clone()
        - abcd.clone() * apc.clone() * qp(n_i - 1)?
        - (ac.clone() * bpd.clone() + abcd.clone() * apc.clone()) * qp(n_i)?
        - ac.clone() * bpd.clone() * qp(n_i + 1)?
        + a.clone() * a.clone() * b.clone() * c.clone() * c.clone() * d.clone() * bpd.clone() * qp(2 * n_i - 1)?
        + abcd.clone() * apc.clone() * qp(2 * n_i)?;

    let qn = qp(n_i)?;
    let big_a_num = one_minus(qp(n_i - 1)? * abcd.clone())
        * one_minus(qp(n_i + 1)?)
        * one_minus(qn.clone() * a.clone() * b.clone())
        * one_minus(qn.clone() * ac.clone())
        * one_minus(qn.clone() * a.clone() * d.clone())
        * one_minus(qn.clone() * b.clone() * c.clone())
        * one_minus(qn.clone() * bd.clone())
        * one_minus(qn.clone() * c.clone() * d.clone());
    let mid = one_minus(qp(2 * n_i)? * abcd.clone());
    let big_a_den = one_minus(qp(2 * n_i - 1)? * abcd.clone())
        * mid.clone()
        * mid
        * one_minus(qp(2 * n_i + 1)? * abcd.clone());
    let big_a = big_a_num.checked_div(&big_a_den, "𝒜_n denominator")?;
    let pair = one_minus(qn.clone() * ac.clone()) * one_minus(qn.clone() * bd.clone());

    Ok(UswEntries {
        d_nat: pre.clone() * d_br,
        d_sharp: F::one(),
        d_flat: (-(qn.clone() * bd * big_a.clone())).checked_div(&pair, "(1 - q^n·ac)(1 - q^n·bd)")?,
        e_nat: pre * e_br,
        e_sharp: -(qn * ac),
        e_flat: big_a.checked_div(&pair, "(1 - q^n·ac)(1 - q^n·bd)")?,
        big_a,
    })
}

/// All entries `0..=p.horizon`, computed once.
pub fn usw_table<F: Field>(p: &ParamPoint<F>) -> Result<Vec<UswEntries<F>>> {
    (0..=p.horizon).map(|n| usw_entries(p, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Rational, Ring};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn point() -> ParamPoint<Rational> {
        ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap()
    }

    #[test]
    fn cancelled_n0_matches_printed_form() {
        let p = point();
        assert_eq!(usw_entries(&p, 0).unwrap(), printed_entries(&p, 0).unwrap());
    }

    #[test]
    fn printed_n0_refuses_q_zero() {
        let p = ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), Rational::zero()).unwrap();
        assert!(printed_entries(&p, 0).is_err());
        assert!(usw_entries(&p, 0).is_ok());
    }

    #[test]
    fn zero_parameters() {
        let q = r(2, 5);
        let z = Rational::zero();
        let p = ParamPoint::new(z.clone(), z.clone(), z.clone(), z, q.clone()).unwrap();
        for n in 0..6 {
            let e = usw_entries(&p, n).unwrap();
            assert!(e.d_nat.is_zero() && e.e_nat.is_zero());
            assert!(e.d_sharp.is_one());
            assert!(e.e_sharp.is_zero() && e.d_flat.is_zero());
            assert_eq!(e.e_flat, Rational::one() - q.pow(n as u32 + 1));
        }
    }

    #[test]
    fn sharp_entries() {
        let p = point();
        for n in 0..5 {
            let e = usw_entries(&p, n).unwrap();
            assert!(e.d_sharp.is_one());
            assert_eq!(e.e_sharp, -(p.q.pow(n as u32) * p.ac()));
        }
    }

    #[test]
    fn horizon_is_enforced() {
        let p = point();
        assert!(matches!(
            usw_entries(&p, p.horizon + 1),
            Err(Error::HorizonExceeded { .. })
        ));
    }
}
