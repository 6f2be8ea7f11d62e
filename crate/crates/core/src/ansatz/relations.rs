use crate::ansatz::band::BandOperator;
use crate::ansatz::ops::Operators;
use crate::error::{Error, Result};
use crate::exact::{Field, Rational, Ring};
use crate::report::Report;

fn compare_block<F: Field>(
    report: &mut Report,
    name: &str,
    lhs: &BandOperator<F>,
    rhs: &BandOperator<F>,
    size: usize,
) -> Result<()> {
    for i in 0..size {
        for j in 0..size {
            let (l, r) = (lhs.entry(i, j)?, rhs.entry(i, j)?);
            if l != r {
                report.compare(name, format!("entry ({i},{j})"), &l, &r);
                return Ok(());
            }
        }
    }
    report.assert(name, format!("{size}x{size} interior"), true, "equal".into(), "equal".into());
    Ok(())
}

fn compare_vec<F: Field>(report: &mut Report, name: &str, what: &str, lhs: &[F], rhs: &[F]) {
    for (k, (l, r)) in lhs.iter().zip(rhs).enumerate() {
        if l != r {
            report.compare(name, format!("{what} component {k}"), l, r);
            return;
        }
    }
    report.assert(name, format!("{what}, {} components", lhs.len()), true, "equal".into(), "equal".into());
}

fn row<F: Field>(m: &BandOperator<F>, i: usize, dim: usize) -> Result<Vec<F>> {
    (0..dim).map(|j| m.entry(i, j)).collect()
}

fn col<F: Field>(m: &BandOperator<F>, j: usize, dim: usize) -> Result<Vec<F>> {
    (0..dim).map(|i| m.entry(i, j)).collect()
}

fn unit<F: Field>(k: usize, dim: usize) -> Vec<F> {
    (0..dim).map(|i| if i == k { F::one() } else { F::zero() }).collect()
}

/// Verify every quadratic and boundary relation of the representation.
///
/// Products are formed from the infinite band generators, so the compared
/// entries are exact; the interior block of side `dim - 2w` (with `w` the
/// largest bandwidth among the factors) is compared for bulk relations and
/// full rows or columns of length `dim` for boundary relations.
pub fn check_ansatz_relations<F: Field>(ops: &Operators<F>, dim: usize) -> Result<Report> {
    if dim < 6 {
        return Err(Error::precondition("relation check needs dim ≥ 6"));
    }
    let p = &ops.point;
    let q = p.q.clone();
    let id = BandOperator::<F>::identity();
    let (dd, ee, d, e, a) = (&ops.small_d, &ops.small_e, &ops.d, &ops.e, &ops.a);
    let mut rep = Report::new();
    let inner1 = dim - 2;
    let inner2 = dim - 4;

    compare_block(
        &mut rep,
        "DE - qED = D + E",
        &d.product(e).sub(&e.product(d).scale(q.clone())),
        &d.add(e),
        inner1,
    )?;
    compare_block(&mut rep, "DA = qAD + A", &d.product(a), &a.product(d).scale(q.clone()).add(a), inner2)?;
    compare_block(&mut rep, "AE = qEA + A", &a.product(e), &e.product(a).scale(q.clone()).add(a), inner2)?;
    compare_block(&mut rep, "dA = qAd", &dd.product(a), &a.product(dd).scale(q.clone()), inner2)?;
    compare_block(&mut rep, "Ae = qeA", &a.product(ee), &ee.product(a).scale(q.clone()), inner2)?;
    compare_block(
        &mut rep,
        "de = qed + (1-q)",
        &dd.product(ee),
        &ee.product(dd).scale(q.clone()).add(&id.scale(F::one() - q.clone())),
        inner1,
    )?;
    let mut dk = id.clone();
    for k in 1..=4u32 {
        let dk_prev = dk.clone();
        dk = dk.product(dd);
        let qk = q.pow(k);
        compare_block(
            &mut rep,
            &format!("d^{k} e = q^{k} e d^{k} + (1-q^{k}) d^{}", k - 1),
            &dk.product(ee),
            &ee.product(&dk).scale(qk.clone()).add(&dk_prev.scale(F::one() - qk)),
            inner1,
        )?;
    }

    // boundary rows and columns
    let w_row = row(&e.scale(p.alpha.clone()).sub(&d.scale(p.gamma.clone())), 0, dim)?;
    compare_vec(&mut rep, "<W|(alpha E - gamma D) = <W|", "row 0", &w_row, &unit(0, dim));
    let v_col = col(&d.scale(p.beta.clone()).sub(&e.scale(p.delta.clone())), 0, dim)?;
    compare_vec(&mut rep, "(beta D - delta E)|V> = |V>", "column 0", &v_col, &unit(0, dim));

    let lhs = col(dd, 0, dim)?;
    let rhs: Vec<F> = unit::<F>(0, dim)
        .into_iter()
        .zip(col(ee, 0, dim)?)
        .map(|(u, x)| (p.b.clone() + p.d.clone()) * u - p.bd() * x)
        .collect();
    compare_vec(&mut rep, "d|V> = (b+d)|V> - bd e|V>", "column 0", &lhs, &rhs);

    let lhs = row(ee, 0, dim)?;
    let rhs: Vec<F> = unit::<F>(0, dim)
        .into_iter()
        .zip(row(dd, 0, dim)?)
        .map(|(u, x)| (p.a.clone() + p.c.clone()) * u - p.ac() * x)
        .collect();
    compare_vec(&mut rep, "<W|e = (a+c)<W| - ac <W|d", "row 0", &lhs, &rhs);

    let table = crate::ansatz::usw::usw_table(p)?;
    for k in 0..dim - 1 {
        let lhs = col(dd, k, dim)?;
        let mut rhs = vec![F::zero(); dim];
        if k > 0 {
            rhs[k - 1] = table[k - 1].d_sharp.clone();
        }
        rhs[k] = table[k].d_nat.clone();
        rhs[k + 1] = table[k].d_flat.clone();
        compare_vec(&mut rep, "d|V^k> three-term", &format!("k={k}"), &lhs, &rhs);
    }
    Ok(rep)
}

/// Convenience for the rational case with a corrupted `D` entry; the report
/// must locate the failure.
pub fn corrupt_d(ops: &Operators<Rational>, i: usize, j: usize) -> Result<Operators<Rational>> {
    let bumped = ops.d.entry(i, j)? + Rational::one();
    let mut out = ops.clone();
    out.d = ops.d.with_entry(i, j, bumped);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{build_operators, ParamPoint};
    use crate::exact::Ring;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn relations_hold_at_generic_point() {
        let p = ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap();
        let rep = check_ansatz_relations(&build_operators(&p).unwrap(), 8).unwrap();
        assert!(rep.all_hold(), "{rep}");
    }

    #[test]
    fn relations_hold_at_tasep_point() {
        let z = Rational::zero();
        let p = ParamPoint::new(z.clone(), z.clone(), z.clone(), z.clone(), z).unwrap();
        let rep = check_ansatz_relations(&build_operators(&p).unwrap(), 8).unwrap();
        assert!(rep.all_hold(), "{rep}");
        // at q = 0 the bulk relation reads DE = D + E
        assert!(rep.named("DE - qED = D + E").all(|c| c.holds));
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let p = ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap();
        let bad = corrupt_d(&build_operators(&p).unwrap(), 1, 1).unwrap();
        let rep = check_ansatz_relations(&bad, 8).unwrap();
        let fail = rep.failures().next().expect("must fail");
        assert_eq!(fail.identity, "DE - qED = D + E");
        assert!(fail.indices.contains("entry"));
    }

    #[test]
    fn small_dimension_is_rejected() {
        let p = ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap();
        assert!(check_ansatz_relations(&build_operators(&p).unwrap(), 4).is_err());
    }
}
