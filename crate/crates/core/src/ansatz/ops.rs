use std::sync::Arc;

use crate::ansatz::band::BandOperator;
use crate::ansatz::params::ParamPoint;
use crate::ansatz::usw::{usw_table, UswEntries};
use crate::error::{Error, Result};
use crate::exact::{Field, Ring};

/// The representation at one parameter point: `𝖽`, `𝖾`, `D`, `E` and `A`.
#[derive(Debug, Clone)]
pub struct Operators<F> {
    pub point: ParamPoint<F>,
    pub small_d: BandOperator<F>,
    pub small_e: BandOperator<F>,
    pub d: BandOperator<F>,
    pub e: BandOperator<F>,
    pub a: BandOperator<F>,
}

fn lookup<F: Clone>(
    table: &Arc<Vec<UswEntries<F>>>,
    n: usize,
    pick: fn(&UswEntries<F>) -> &F,
) -> Result<F> {
    table
        .get(n)
        .map(|e| pick(e).clone())
        .ok_or(Error::HorizonExceeded { index: n, horizon: table.len() - 1 })
}

/// Build `D = (1+𝖽)/(1-q)`, `E = (1+𝖾)/(1-q)` and `A = DE - ED`.
pub fn build_operators<F: Field>(p: &ParamPoint<F>) -> Result<Operators<F>> {
    let table = Arc::new(usw_table(p)?);
    let tri = |nat: fn(&UswEntries<F>) -> &F,
               sharp: fn(&UswEntries<F>) -> &F,
               flat: fn(&UswEntries<F>) -> &F| {
        let (t1, t2, t3) = (table.clone(), table.clone(), table.clone());
        // 𝖽♭_n sits at (n+1, n), so row n+1 must also be certified
        BandOperator::tridiagonal(
            move |n| lookup(&t1, n, nat),
            move |n| {
                lookup(&t2, n + 1, sharp)?;
                lookup(&t2, n, sharp)
            },
            move |n| {
                lookup(&t3, n + 1, flat)?;
                lookup(&t3, n, flat)
            },
        )
    };
    let small_d = tri(|e| &e.d_nat, |e| &e.d_sharp, |e| &e.d_flat);
    let small_e = tri(|e| &e.e_nat, |e| &e.e_sharp, |e| &e.e_flat);
    let inv = (F::one() - p.q.clone()).inv()?;
    let id = BandOperator::identity();
    let d = id.add(&small_d).scale(inv.clone()).cached();
    let e = id.add(&small_e).scale(inv).cached();
    let a = d.commutator(&e).cached();
    Ok(Operators { point: p.clone(), small_d, small_e, d, e, a })
}

/// Truncation dimension guaranteed to give the exact bracket: the support
/// reachable from `⟨W|` plus the target index, with a margin of two.
pub fn safe_dimension<R: Ring>(ops: &[&BandOperator<R>], r: usize) -> usize {
    1 + r + ops.iter().map(|o| o.lower() + o.upper()).sum::<usize>() + 2
}

/// `⟨W| M₁ M₂ ⋯ M_N |V^r⟩` on the automatically chosen truncation.
pub fn eval_bra_word_ket<R: Ring>(ops: &[&BandOperator<R>], r: usize) -> Result<R> {
    eval_truncated(ops, r, safe_dimension(ops, r))
}

/// The same bracket computed on the `dim × dim` truncations.
pub fn eval_truncated<R: Ring>(ops: &[&BandOperator<R>], r: usize, dim: usize) -> Result<R> {
    if r >= dim {
        return Ok(R::zero());
    }
    Ok(propagate(ops, dim)?.swap_remove(r))
}

/// Row `⟨W| M₁⋯M_N`, first `len` components.
pub fn eval_bra_word<R: Ring>(ops: &[&BandOperator<R>], len: usize) -> Result<Vec<R>> {
    let mut v = propagate(ops, safe_dimension(ops, len))?;
    v.truncate(len);
    Ok(v)
}

/// Push the row vector `⟨W|` through one truncated factor at a time. Zero
/// components are skipped, so entries outside the reachable support are
/// never generated.
fn propagate<R: Ring>(ops: &[&BandOperator<R>], dim: usize) -> Result<Vec<R>> {
    let mut v = vec![R::zero(); dim];
    if dim == 0 {
        return Ok(v);
    }
    v[0] = R::one();
    for op in ops {
        let mut next = vec![R::zero(); dim];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in op.row_support(i) {
                if j >= dim {
                    break;
                }
                let m = op.entry(i, j)?;
                if !m.is_zero() {
                    next[j] = next[j].clone() + vi.clone() * m;
                }
            }
        }
        v = next;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Poly, Rational};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn generic() -> ParamPoint<Rational> {
        ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap()
    }

    #[test]
    fn tasep_point_entries() {
        let z = Rational::zero();
        let p = ParamPoint::new(z.clone(), z.clone(), z.clone(), z.clone(), z).unwrap();
        let ops = build_operators(&p).unwrap();
        assert!(ops.d.entry(0, 0).unwrap().is_one());
        assert!(ops.e.entry(0, 0).unwrap().is_one());
        assert!(ops.d.entry(0, 1).unwrap().is_one());
    }

    #[test]
    fn a_has_band_two_and_known_corner() {
        let p = generic();
        let ops = build_operators(&p).unwrap();
        for i in 0..8usize {
            for j in 0..8 {
                if i.abs_diff(j) > 2 {
                    assert!(ops.a.entry(i, j).unwrap().is_zero(), "({i},{j})");
                }
            }
        }
        let t = crate::ansatz::usw::usw_entries(&p, 0).unwrap();
        let omq = Rational::one() - p.q.clone();
        assert_eq!(
            ops.a.entry(0, 0).unwrap() * omq.clone() * omq,
            t.d_sharp * t.e_flat - t.e_sharp * t.d_flat
        );
    }

    #[test]
    fn empty_word() {
        let ops: Vec<&BandOperator<Rational>> = vec![];
        assert!(eval_bra_word_ket(&ops, 0).unwrap().is_one());
        assert!(eval_bra_word_ket(&ops, 2).unwrap().is_zero());
    }

    #[test]
    fn xi_d_plus_e_at_tasep_point() {
        let z = Rational::zero();
        let p = ParamPoint::new(z.clone(), z.clone(), z.clone(), z.clone(), z).unwrap();
        let ops = build_operators(&p).unwrap();
        let xi_d = ops.d.map(|x| Poly::<Rational>::var() * Poly::constant(x));
        let c = xi_d.add(&ops.e.map(Poly::constant));
        let z1 = eval_bra_word_ket(&[&c], 0).unwrap();
        assert_eq!(z1, Poly::from_coeffs(vec![Rational::one(), Rational::one()]));
    }

    #[test]
    fn truncation_is_stable() {
        let ops = build_operators(&generic()).unwrap();
        let word = [&ops.d, &ops.a, &ops.e, &ops.e, &ops.a, &ops.d];
        for r in 0..4 {
            let dim = safe_dimension(&word, r);
            let base = eval_truncated(&word, r, dim).unwrap();
            assert_eq!(base, eval_truncated(&word, r, dim + 3).unwrap());
            assert_eq!(base, eval_truncated(&word, r, dim + 5).unwrap());
        }
    }
}
