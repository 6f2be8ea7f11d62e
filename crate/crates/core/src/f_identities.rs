//! The polynomials `F_m(y)`, `A_m(a,c)`, `B_m(b,d)`, the coefficients
//! `X_{m,n}` and `x(m,n,i,j)`, and checks of every recurrence that links
//! `⟨W|𝖽^N|V^r⟩` to `⟨W|A^r 𝖽^m|V⟩`.

use serde::{Deserialize, Serialize};

use crate::ansatz::{eval_bra_word_ket, Operators, ParamPoint};
use crate::error::{Error, Result};
use crate::exact::{q_binomial, q_binomial_inv_base, Field, Poly, Poly4, Rational, Ring, SeriesY};
use crate::report::Report;

// variable slots in Poly4
const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

fn require_q_nonzero<F: Field>(q: &F, what: &str) -> Result<()> {
    if q.is_zero() {
        return Err(Error::precondition(format!("{what} needs q ≠ 0")));
    }
    Ok(())
}

/// `B_m(b,d) = Σ [m,i]_q b^i d^{m-i}` as a polynomial in (a, b, c, d).
pub fn b_poly4(m: usize, q: &Rational) -> Poly4 {
    (0..=m).fold(Poly4::zero(), |acc, i| {
        acc + Poly4::term(q_binomial(m as i64, i as i64, q), [0, i as u32, 0, (m - i) as u32])
    })
}

/// `A_m(a,c) = Σ [m,i]_{1/q} a^i c^{m-i}`
pub fn a_poly4(m: usize, q: &Rational) -> Result<Poly4> {
    require_q_nonzero(q, "A_m")?;
    (0..=m).try_fold(Poly4::zero(), |acc, i| {
        Ok(acc + Poly4::term(q_binomial_inv_base(m as i64, i as i64, q)?, [i as u32, 0, (m - i) as u32, 0]))
    })
}

pub fn b_poly<F: Field>(p: &ParamPoint<F>, m: usize) -> F {
    (0..=m).fold(F::zero(), |acc, i| {
        acc + q_binomial(m as i64, i as i64, &p.q) * p.b.pow(i as u32) * p.d.pow((m - i) as u32)
    })
}

pub fn a_poly<F: Field>(p: &ParamPoint<F>, m: usize) -> Result<F> {
    require_q_nonzero(&p.q, "A_m")?;
    (0..=m).try_fold(F::zero(), |acc, i| {
        Ok(acc + q_binomial_inv_base(m as i64, i as i64, &p.q)? * p.a.pow(i as u32) * p.c.pow((m - i) as u32))
    })
}

/// `F_0, …, F_m` by the defining recurrence, as polynomials in y.
pub fn f_sequence<F: Field>(p: &ParamPoint<F>, m: usize) -> Vec<Poly<F>> {
    let (s_bd, s_ac) = (p.b.clone() + p.d.clone(), p.a.clone() + p.c.clone());
    let mut out: Vec<Poly<F>> = vec![Poly::one()];
    for k in 1..=m {
        let qk1 = p.q.pow((k - 1) as u32);
        let first = Poly::linear(s_bd.clone(), -(s_ac.clone() * qk1.clone())) * out[k - 1].clone();
        let second = if k >= 2 {
            // (q^{k-1} - 1)(bd - ac q^{k-2} y²)
            let inner = Poly::from_coeffs(vec![p.bd(), F::zero(), -(p.ac() * p.q.pow((k - 2) as u32))]);
            inner.scale(&(qk1 - F::one())) * out[k - 2].clone()
        } else {
            Poly::zero()
        };
        out.push(first + second);
    }
    out
}

pub fn f_recurrence<F: Field>(p: &ParamPoint<F>, m: usize) -> Poly<F> {
    f_sequence(p, m).pop().expect("nonempty")
}

/// `F_m(y) = Σ (-1)^i [m,i]_q q^{C(i,2)} y^i A_i(a,c) B_{m-i}(b,d)`
pub fn f_explicit<F: Field>(p: &ParamPoint<F>, m: usize) -> Result<Poly<F>> {
    require_q_nonzero(&p.q, "explicit F_m")?;
    let mut coeffs = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let sign = if i % 2 == 0 { F::one() } else { -F::one() };
        let c = sign
            * q_binomial(m as i64, i as i64, &p.q)
            * p.q.pow((i * i.saturating_sub(1) / 2) as u32)
            * a_poly(p, i)?
            * b_poly(p, m - i);
        coeffs.push(c);
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// `x(m,n,i,j) = (-1)^n q^{C(n,2)} [m,n]_q [m-n,i]_q [n,j]_{1/q}`, zero
/// whenever an index leaves its range.
pub fn x_coeff(m: i64, n: i64, i: i64, j: i64, q: &Rational) -> Result<Rational> {
    require_q_nonzero(q, "x(m,n,i,j)")?;
    if m < 0 || n < 0 || n > m || i < 0 || j < 0 || i > m - n || j > n {
        return Ok(Rational::zero());
    }
    let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    Ok(sign
        * q.pow((n * (n - 1) / 2) as u32)
        * q_binomial(m, n, q)
        * q_binomial(m - n, i, q)
        * q_binomial_inv_base(n, j, q)?)
}

/// `X_{m,n}` expanded directly from its definition.
pub fn x_mn_direct(m: i64, n: i64, q: &Rational) -> Result<Poly4> {
    if m < 0 || n < 0 || n > m {
        return Ok(Poly4::zero());
    }
    let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let c = sign * q_binomial(m, n, q) * q.pow((n * (n - 1) / 2) as u32);
    let bd_n = Poly4::term(c, [0, n as u32, 0, n as u32]);
    Ok(bd_n * a_poly4(n as usize, q)? * b_poly4((m - n) as usize, q))
}

/// `X_{m,n} = Σ_{i,j} x(m,n,i,j) a^j b^{n+i} c^{n-j} d^{m-i}`
pub fn x_mn_from_coeffs(m: i64, n: i64, q: &Rational) -> Result<Poly4> {
    let mut out = Poly4::zero();
    if m < 0 || n < 0 || n > m {
        return Ok(out);
    }
    for i in 0..=(m - n) {
        for j in 0..=n {
            let e = [j as u32, (n + i) as u32, (n - j) as u32, (m - i) as u32];
            out = out + Poly4::term(x_coeff(m, n, i, j, q)?, e);
        }
    }
    Ok(out)
}

/// `R_r`, the diagonal coefficient in the border relation for `𝖽|V^r⟩`.
pub fn r_r_scalar<F: Field>(p: &ParamPoint<F>, r: usize) -> Result<F> {
    if r == 0 {
        require_q_nonzero(&p.q, "R_0")?;
    }
    let r = r as i64;
    let q = &p.q;
    let big_p = p.abcd();
    let sbd = p.b.clone() + p.d.clone();
    let inner = q.clone() * sbd.clone() - q.powi(r - 1)? * sbd * big_p.clone()
        + p.bd() * (p.a.clone() + p.c.clone()) * (F::one() - q.powi(r)?);
    let den = F::one() - big_p * q.powi(2 * r - 2)?;
    (q.powi(r - 1)? * inner).checked_div(&den, "1 - abcd q^{2r-2}")
}

/// Index ranges for the checks of [`verify_section7`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section7Bounds {
    pub m_max: usize,
    pub r_max: usize,
    pub n_max: usize,
    /// Largest `m` in the coefficient identities.
    pub coeff_m_max: usize,
}

impl Default for Section7Bounds {
    fn default() -> Self {
        Section7Bounds { m_max: 6, r_max: 4, n_max: 8, coeff_m_max: 5 }
    }
}

impl std::str::FromStr for Section7Bounds {
    type Err = Error;
    /// `m=6,r=4,N=8,coeff=5`; omitted keys keep their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut b = Section7Bounds::default();
        for kv in s.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bound {kv:?} is not key=value")))?;
            let v: usize = v.trim().parse().map_err(|e| Error::Parse(format!("bound {kv:?}: {e}")))?;
            match k.trim() {
                "m" => b.m_max = v,
                "r" => b.r_max = v,
                "N" | "n" => b.n_max = v,
                "coeff" => b.coeff_m_max = v,
                other => return Err(Error::Parse(format!("unknown bound {other:?}"))),
            }
        }
        Ok(b)
    }
}

struct Ctx<'a, F: Field> {
    ops: &'a Operators<F>,
    fs: Vec<Poly<F>>,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn p(&self) -> &ParamPoint<F> {
        &self.ops.point
    }

    fn qp(&self, k: i64) -> Result<F> {
        self.p().q.powi(k)
    }

    fn one_minus_pq(&self, k: i64) -> Result<F> {
        Ok(F::one() - self.p().abcd() * self.qp(k)?)
    }

    /// `⟨W|𝖽^N|V^r⟩`, zero for negative indices.
    fn dd(&self, n: i64, r: i64) -> Result<F> {
        if n < 0 || r < 0 {
            return Ok(F::zero());
        }
        eval_bra_word_ket(&vec![&self.ops.small_d; n as usize], r as usize)
    }

    /// `⟨W|A^r 𝖽^m|V⟩`
    fn ad(&self, r: usize, m: i64) -> Result<F> {
        if m < 0 {
            return Ok(F::zero());
        }
        let mut word = vec![&self.ops.a; r];
        word.extend(std::iter::repeat(&self.ops.small_d).take(m as usize));
        eval_bra_word_ket(&word, 0)
    }

    /// `F_m(y)`, zero for `m < 0`.
    fn f_at(&self, m: i64, y: &F) -> F {
        if m < 0 {
            F::zero()
        } else {
            self.fs[m as usize].eval(y)
        }
    }

    /// `C(m,r) = F_m(bd q^r) / Π_{i<m}(1 - abcd q^{2r+i})`
    fn c_mr(&self, m: i64, r: i64) -> Result<F> {
        if m < 0 {
            return Ok(F::zero());
        }
        let y = self.p().bd() * self.qp(r)?;
        let mut den = F::one();
        for i in 0..m {
            den = den * self.one_minus_pq(2 * r + i)?;
        }
        self.f_at(m, &y).checked_div(&den, "prod(1 - abcd q^{2r+i})")
    }
}

/// Every identity of the `𝖽`-calculus at one point, within `bounds`.
pub fn verify_section7<F: Field>(ops: &Operators<F>, bounds: Section7Bounds) -> Result<Report> {
    let p = &ops.point;
    require_q_nonzero(&p.q, "the d-calculus checks")?;
    let fmax = bounds.m_max.max(bounds.n_max) + 2;
    let cx = Ctx { ops, fs: f_sequence(p, fmax) };
    let mut rep = Report::new();
    check_f_forms(&cx, bounds, &mut rep)?;
    check_ab_lemma(p, bounds, &mut rep)?;
    check_binomial_lemma(bounds, &mut rep);
    check_ak(&cx, bounds, &mut rep)?;
    check_border(&cx, bounds, &mut rep)?;
    check_dd(&cx, bounds, &mut rep)?;
    check_recurrences(&cx, bounds, &mut rep)?;
    check_f2(&cx, bounds, &mut rep)?;
    Ok(rep)
}

fn check_f_forms<F: Field>(cx: &Ctx<F>, b: Section7Bounds, rep: &mut Report) -> Result<()> {
    for m in 0..=b.m_max.max(b.n_max) {
        rep.compare("F explicit = F recurrence", format!("m={m}"), &f_explicit(cx.p(), m)?, &cx.fs[m]);
    }
    Ok(())
}

/// Both `B` and `A` identities, as polynomials in (a, b, c, d) at the point's q.
fn check_ab_lemma<F: Field>(p: &ParamPoint<F>, b: Section7Bounds, rep: &mut Report) -> Result<()> {
    // the polynomial form needs a rational q; other fields check numerically
    let q_rat: Option<Rational> = (&p.q as &dyn std::any::Any).downcast_ref::<Rational>().cloned();
    for m in 1..=b.m_max {
        let idx = format!("m={m}");
        let qm = p.q.pow(m as u32);
        let lhs = (p.b.clone() + p.d.clone()) * b_poly(p, m);
        let rhs = b_poly(p, m + 1) + (F::one() - qm.clone()) * p.bd() * b_poly(p, m - 1);
        rep.compare("(b+d)B_m = B_{m+1} + (1-q^m) bd B_{m-1}", idx.clone(), &lhs, &rhs);
        let lhs = (p.a.clone() + p.c.clone()) * a_poly(p, m)?;
        let rhs = a_poly(p, m + 1)? + (F::one() - qm.inv()?) * p.ac() * a_poly(p, m - 1)?;
        rep.compare("(a+c)A_m = A_{m+1} + (1-q^-m) ac A_{m-1}", idx.clone(), &lhs, &rhs);
        if let Some(q) = &q_rat {
            let bd = Poly4::var(B) * Poly4::var(D);
            let ac = Poly4::var(A) * Poly4::var(C);
            let qm = q.pow(m as u32);
            let lhs = (Poly4::var(B) + Poly4::var(D)) * b_poly4(m, q);
            let rhs = b_poly4(m + 1, q) + bd * b_poly4(m - 1, q).scale(&(Rational::one() - qm.clone()));
            rep.compare("(b+d)B_m = B_{m+1} + (1-q^m) bd B_{m-1} in b,d", idx.clone(), &lhs, &rhs);
            let lhs = (Poly4::var(A) + Poly4::var(C)) * a_poly4(m, q)?;
            let rhs = a_poly4(m + 1, q)? + ac * a_poly4(m - 1, q)?.scale(&(Rational::one() - qm.inv()?));
            rep.compare("(a+c)A_m = A_{m+1} + (1-q^-m) ac A_{m-1} in a,c", idx, &lhs, &rhs);
        }
    }
    if let Some(q) = &q_rat {
        check_coefficient_identities(q, b, rep)?;
    }
    Ok(())
}

/// The three q-binomial identities, with q formal.
fn check_binomial_lemma(b: Section7Bounds, rep: &mut Report) {
    let q = Poly::<Rational>::var();
    let one = Poly::<Rational>::one();
    let qb = |m: i64, i: i64| q_binomial(m, i, &q);
    let qp = |k: i64| q.pow(k as u32);
    for m in 1..=b.n_max as i64 {
        for i in 0..=m {
            let idx = format!("m={m}, i={i}");
            rep.compare("[m,i] = [m-1,i] + q^{m-i}[m-1,i-1]", idx.clone(), &qb(m, i), &(qb(m - 1, i) + qp(m - i) * qb(m - 1, i - 1)));
            rep.compare("[m,i] = q^i[m-1,i] + [m-1,i-1]", idx.clone(), &qb(m, i), &(qp(i) * qb(m - 1, i) + qb(m - 1, i - 1)));
            rep.compare(
                "(1-q^m)[m-1,i] = (1-q^{m-i})[m,i]",
                idx,
                &((one.clone() - qp(m)) * qb(m - 1, i)),
                &((one.clone() - qp(m - i)) * qb(m, i)),
            );
        }
    }
}

fn check_ak<F: Field>(cx: &Ctx<F>, b: Section7Bounds, rep: &mut Report) -> Result<()> {
    let p = cx.p();
    for r in 0..=b.r_max {
        let ri = r as i64;
        let norm = cx.ad(r, 0)?;
        if norm.is_zero() {
            return Err(Error::degenerate(format!("<W|A^{r}|V>")));
        }
        for m in 1..=b.m_max as i64 {
            let idx = format!("m={m}, r={r}");
            let den = cx.one_minus_pq(m + 2 * ri - 1)?;
            let c1 = (p.b.clone() + p.d.clone() - p.bd() * (p.a.clone() + p.c.clone()) * cx.qp(m + ri - 1)?)
                .checked_div(&den, "1 - abcd q^{m+2r-1}")?;
            let c2 = (p.bd() * (cx.qp(m - 1)? - F::one())).div(&den)?;
            let rhs = c1 * cx.ad(r, m - 1)? + c2 * cx.ad(r, m - 2)?;
            rep.compare("Ak-recurrence", idx, &cx.ad(r, m)?, &rhs);
        }
        let y = p.bd() * cx.qp(ri)?;
        for m in 0..=b.m_max as i64 {
            let idx = format!("m={m}, r={r}");
            let lhs = cx.ad(r, m)?.div(&norm)?;
            rep.compare("<W|A^r d^m|V>/<W|A^r|V> = F_m(bd q^r)/prod", idx.clone(), &lhs, &cx.c_mr(m, ri)?);
            let explicit = f_explicit(p, m as usize)?.eval(&y);
            rep.compare("F_m(bd q^r) explicit = recurrence", idx, &explicit, &cx.f_at(m, &y));
        }
    }
    Ok(())
}

/// `𝖽|V^r⟩ = (1 - q^{2r-1}abcd)|V^{r-1}⟩ - bd q^r 𝖾|V^r⟩ + R_r|V^r⟩`, entrywise.
fn check_border<F: Field>(cx: &Ctx<F>, b: Section7Bounds, rep: &mut Report) -> Result<()> {
    let p = cx.p();
    let (dd, ee) = (&cx.ops.small_d, &cx.ops.small_e);
    for r in 1..=b.r_max.max(5) {
        let ri = r as i64;
        let rr = r_r_scalar(p, r)?;
        let bdq = p.bd() * cx.qp(ri)?;
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..=r + 2 {
            lhs.push(dd.entry(i, r)?);
            let mut v = -(bdq.clone() * ee.entry(i, r)?);
            if i + 1 == r {
                v = v + cx.one_minus_pq(2 * ri - 1)?;
            }
            if i == r {
                v = v + rr.clone();
            }
            rhs.push(v);
        }
        let show = |v: &[F]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        rep.assert("border relation for d|V^r>", format!("r={r}"), lhs == rhs, show(&lhs), show(&rhs));
    }
    Ok(())
}

fn check_dd<F: Field>(cx: &Ctx<F>, b: Section7Bounds, rep: &mut Report) -> Result<()> {
    let p = cx.p();
    let ops = cx.ops;
    for r in 1..=b.r_max as i64 {
        let rr = r_r_scalar(p, r as usize)?;
        for n in 1..=b.n_max as i64 {
            let idx = format!("N={n}, r={r}");
            let lhs = cx.one_minus_pq(r + n - 1)? * cx.dd(n, r)?;
            let rhs = cx.one_minus_pq(2 * r - 1)? * cx.dd(n - 1, r - 1)?
                - p.bd() * cx.qp(r)? * (F::one() - cx.qp(n - 1)?) * cx.dd(n - 2, r)?
                + (rr.clone() - p.bd() * cx.qp(r + n - 1)? * (p.a.clone() + p.c.clone())) * cx.dd(n - 1, r)?;
            rep.compare("dd-recurrence", idx, &lhs, &rhs);
        }
    }
    for r in 0..=b.r_max as i64 {
        for m in 0..=(b.n_max as i64 - r).max(0) {
            let idx = format!("m={m}, r={r}");
            let rhs = q_binomial(m + r, r, &p.q) * cx.c_mr(m, r)?;
            rep.compare("<W|d^{m+r}|V^r> = [m+r,r] C(m,r)", idx, &cx.dd(m + r, r)?, &rhs);
        }
    }
    // both forms of the identity tying d^N to A^r d^{N-r}
    for n in 0..=b.n_max {
        for r in 0..=b.r_max.min(n) {
            let idx = format!("N={n}, r={r}");
            let norm = cx.ad(r, 0)?;
            let lhs = cx.dd(n as i64, r as i64)?;
            let via_a = q_binomial(n as i64, r as i64, &p.q) * cx.ad(r, (n - r) as i64)?.div(&norm)?;
            rep.compare("<W|d^N|V^r> = [N,r] <W|A^r d^{N-r}|V>/<W|A^r|V>", idx.clone(), &lhs, &via_a);
            let base = ops.small_d.map(move |x| SeriesY::constant(x, r));
            let marked = ops.a.map(move |x| SeriesY::linear(x, r));
            let op = base.add(&marked);
            let total: SeriesY<F> = eval_bra_word_ket(&vec![&op; n], 0)?;
            let via_y = total.coeff(r).div(&norm)?;
            rep.compare("<W|d^N|V^r> = [y^r]<W|(d+yA)^N|V>/<W|A^r|V>", idx, &lhs, &via_y);
        }
    }
    Ok(())
}

fn check_recurrences<F: Field>(cx: &Ctx<F>, b: Section7Bounds, rep: &mut Report) -> Result<()> {
    let p = cx.p();
    let sac = p.a.clone() + p.c.clone();
    for r in 1..=b.r_max as i64 {
        let rr = r_r_scalar(p, r as usize)?;
        for m in 0..=b.m_max as i64 {
            let idx = format!("m={m}, r={r}");
            let den = F::one() - cx.qp(m + r)?;
            let a1 = (cx.one_minus_pq(2 * r - 1)? * (F::one() - cx.qp(r)?)).checked_div(&den, "1 - q^{m+r}")?;
            let a2 = (p.bd() * cx.qp(r)? * (F::one() - cx.qp(m - 1)?) * (F::one() - cx.qp(m)?)).div(&den)?;
            let a3 = ((rr.clone() - p.bd() * sac.clone() * cx.qp(m - 1 + 2 * r)?) * (F::one() - cx.qp(m)?)).div(&den)?;
            let lhs = cx.one_minus_pq(2 * r + m - 1)? * cx.c_mr(m, r)?;
            let rhs = a1 * cx.c_mr(m, r - 1)? - a2 * cx.c_mr(m - 2, r)? + a3 * cx.c_mr(m - 1, r)?;
            rep.compare("C(m,r) recurrence", idx.clone(), &lhs, &rhs);

            let y = |k: i64| -> Result<F> { Ok(p.bd() * cx.qp(k)?) };
            let lhs = (F::one() - cx.qp(m + r)?) * cx.one_minus_pq(2 * r - 2)? * cx.f_at(m, &y(r)?);
            let rhs = (F::one() - cx.qp(r)?) * cx.one_minus_pq(2 * r + m - 2)? * cx.f_at(m, &y(r - 1)?)
                - p.bd()
                    * cx.qp(r)?
                    * (F::one() - cx.qp(m - 1)?)
                    * (F::one() - cx.qp(m)?)
                    * cx.one_minus_pq(2 * r - 2)?
                    * cx.one_minus_pq(2 * r + m - 2)?
                    * cx.f_at(m - 2, &y(r)?)
                + (F::one() - cx.qp(m)?)
                    * (rr.clone() - p.bd() * sac.clone() * cx.qp(2 * r + m - 1)?)
                    * cx.one_minus_pq(2 * r - 2)?
                    * cx.f_at(m - 1, &y(r)?);
            rep.compare("F_m(bd q^r) recurrence", idx, &lhs, &rhs);
        }
    }
    Ok(())
}

/// The recurrence of `F_m(bdy)` in y, as a polynomial identity.
fn check_f2<F: Field>(cx: &Ctx<F>, b: Section7Bounds, rep: &mut Report) -> Result<()> {
    let p = cx.p();
    let (bd, pp) = (p.bd(), p.abcd());
    let (sbd, sac) = (p.b.clone() + p.d.clone(), p.a.clone() + p.c.clone());
    let qi = p.q.inv()?;
    let y = Poly::<F>::var();
    let c = |x: F| Poly::constant(x);
    // 1 - k·y²
    let one_minus_y2 = |k: F| Poly::from_coeffs(vec![F::one(), F::zero(), -k]);
    let fy = |m: i64, scale: &F| -> Poly<F> {
        if m < 0 {
            Poly::zero()
        } else {
            cx.fs[m as usize].rescale_var(scale)
        }
    };
    for m in 0..=b.m_max.max(b.n_max) as i64 {
        let qm = cx.qp(m)?;
        let lhs = Poly::linear(F::one(), -qm.clone()) * one_minus_y2(qi.pow(2) * pp.clone()) * fy(m, &bd);
        let t1 = one_minus_y2(cx.qp(m - 2)? * pp.clone()) * Poly::linear(F::one(), -F::one()) * fy(m, &(bd.clone() * qi.clone()));
        let t2 = (y.clone() * c(bd.clone() * (F::one() - qm.clone()) * (F::one() - cx.qp(m - 1)?)))
            * one_minus_y2(pp.clone() * cx.qp(m - 2)?)
            * one_minus_y2(pp.clone() * qi.pow(2))
            * fy(m - 2, &bd);
        let brace = Poly::from_coeffs(vec![
            F::zero(),
            sbd.clone() + qi.clone() * bd.clone() * sac.clone(),
            -(qi.clone() * (F::one() + qm.clone()) * bd.clone() * sac.clone() + qi.pow(2) * sbd.clone() * pp.clone()),
            F::zero(),
            cx.qp(m - 3)? * pp.clone() * bd.clone() * sac.clone(),
        ]);
        let t3 = brace.scale(&(F::one() - qm)) * fy(m - 1, &bd);
        rep.compare("F_m(bdy) recurrence in y", format!("m={m}"), &lhs, &(t1 - t2 + t3));
    }
    Ok(())
}

/// `X_{m,n}` for the coefficient identities, zero outside `0 ≤ n ≤ m`.
fn xp(m: i64, n: i64, q: &Rational) -> Result<Poly4> {
    x_mn_from_coeffs(m, n, q)
}

fn check_coefficient_identities(q: &Rational, b: Section7Bounds, rep: &mut Report) -> Result<()> {
    let one = Rational::one();
    let qp = |k: i64| q.powi(k);
    let v = Poly4::var;
    let pp = v(A) * v(B) * v(C) * v(D);
    let bd = v(B) * v(D);
    let sac = v(A) + v(C);
    let sbd = v(B) + v(D);
    let k = |x: Rational| Poly4::constant(x);
    for m in 0..=b.coeff_m_max as i64 {
        for n in 0..=m + 5 {
            let idx = format!("m={m}, n={n}");
            rep.compare("X_{m,n} from x(m,n,i,j) = definition", idx.clone(), &xp(m, n, q)?, &x_mn_direct(m, n, q)?);

            let qm = qp(m)?;
            let eq1 = k(q.pow(2) * (one.clone() - qp(-n)?)) * xp(m, n, q)?
                - k(one.clone() - qp(m - n + 2)?) * pp.clone() * xp(m, n - 2, q)?
                - k(q.clone() * (one.clone() - qm.clone())) * bd.clone() * sac.clone() * xp(m - 1, n - 1, q)?
                + k(one.clone() - qm.clone()) * pp.clone() * sbd.clone() * xp(m - 1, n - 2, q)?;
            rep.assert("eq:1 coefficient identity", idx.clone(), eq1.is_zero(), eq1.to_string(), "0".into());

            let omq = one.clone() - qm.clone();
            let eq2 = k(qp(1 - n)? - qm.clone()) * xp(m, n - 1, q)?
                + k(qp(m - 2)? - qp(m - n + 1)?) * pp.clone() * xp(m, n - 3, q)?
                - k(omq.clone()) * sbd.clone() * xp(m - 1, n - 1, q)?
                + k(q.inv()? * omq.clone() * (one.clone() + qm.clone())) * bd.clone() * sac.clone() * xp(m - 1, n - 2, q)?
                - k(qp(m - 3)? * omq.clone()) * v(A) * v(C) * sac.clone() * bd.clone() * bd.clone() * xp(m - 1, n - 4, q)?
                + k(omq.clone() * (one.clone() - qp(m - 1)?))
                    * bd.clone()
                    * (xp(m - 2, n - 1, q)? - k(qp(-2)? + qp(m - 2)?) * pp.clone() * xp(m - 2, n - 3, q)?
                        + k(qp(m - 4)?) * pp.clone() * pp.clone() * xp(m - 2, n - 5, q)?);
            rep.assert("eq:2 coefficient identity", idx.clone(), eq2.is_zero(), eq2.to_string(), "0".into());

            check_scalar_coefficient_forms(q, m, n, rep)?;
        }
    }
    Ok(())
}

/// The two identities in x(m,n,i,j) obtained by extracting one monomial.
fn check_scalar_coefficient_forms(q: &Rational, m: i64, n: i64, rep: &mut Report) -> Result<()> {
    let one = Rational::one();
    let qp = |k: i64| q.powi(k);
    let x = |m, n, i, j| x_coeff(m, n, i, j, q);
    let qm = qp(m)?;
    let omq = one.clone() - qm.clone();
    for i in -1..=m + 1 {
        for j in -1..=n + 1 {
            let idx = format!("m={m}, n={n}, i={i}, j={j}");
            let e1 = (one.clone() - qp(-n)?) * x(m, n, i, j)?
                - (qp(-2)? - qp(m - n)?) * x(m, n - 2, i + 1, j - 1)?
                - q.inv()? * omq.clone() * (x(m - 1, n - 1, i, j)? + x(m - 1, n - 1, i, j - 1)?)
                + qp(-2)? * omq.clone() * (x(m - 1, n - 2, i + 1, j - 1)? + x(m - 1, n - 2, i, j - 1)?);
            rep.compare("eq:1 in x(m,n,i,j)", idx.clone(), &e1, &Rational::zero());

            let e2 = (qp(1 - n)? - qm.clone()) * x(m, n - 1, i, j)?
                + (qp(m - 2)? - qp(m - n + 1)?) * x(m, n - 3, i + 1, j - 1)?
                + omq.clone()
                    * (one.clone() - qp(m - 1)?)
                    * (x(m - 2, n - 1, i - 1, j)? - (qp(-2)? + qp(m - 2)?) * x(m - 2, n - 3, i, j - 1)?
                        + qp(m - 4)? * x(m - 2, n - 5, i + 1, j - 2)?)
                - omq.clone()
                    * (x(m - 1, n - 1, i, j)? + x(m - 1, n - 1, i - 1, j)?
                        - (one.clone() + qm.clone()) * q.inv()? * (x(m - 1, n - 2, i, j - 1)? + x(m - 1, n - 2, i, j)?)
                        + qp(m - 3)? * (x(m - 1, n - 4, i + 1, j - 1)? + x(m - 1, n - 4, i + 1, j - 2)?));
            rep.compare("eq:2 in x(m,n,i,j)", idx, &e2, &Rational::zero());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::build_operators;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn point() -> ParamPoint<Rational> {
        ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap()
    }

    #[test]
    fn small_a_b() {
        let p = point();
        assert!(b_poly(&p, 0).is_one());
        assert!(a_poly(&p, 0).unwrap().is_one());
        assert_eq!(b_poly(&p, 1), p.b.clone() + p.d.clone());
        assert_eq!(a_poly(&p, 1).unwrap(), p.a.clone() + p.c.clone());
        let b2 = p.b.pow(2) + (Rational::one() + p.q.clone()) * p.bd() + p.d.pow(2);
        assert_eq!(b_poly(&p, 2), b2);
        let z = ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(0, 1)).unwrap();
        assert!(a_poly(&z, 1).is_err());
    }

    #[test]
    fn first_f_polys() {
        let p = point();
        let fs = f_sequence(&p, 2);
        assert!(fs[0].is_one());
        let f1 = Poly::linear(p.b.clone() + p.d.clone(), -(p.a.clone() + p.c.clone()));
        assert_eq!(fs[1], f1);
        let f2 = Poly::linear(p.b.clone() + p.d.clone(), -(p.q.clone() * (p.a.clone() + p.c.clone()))) * f1
            + Poly::from_coeffs(vec![p.bd(), Rational::zero(), -p.ac()]).scale(&(p.q.clone() - Rational::one()));
        assert_eq!(fs[2], f2);
        for m in 0..=8 {
            assert_eq!(f_explicit(&p, m).unwrap(), f_recurrence(&p, m), "m={m}");
        }
    }

    #[test]
    fn x_coefficients() {
        let q = r(2, 5);
        assert!(x_coeff(3, 0, 0, 0, &q).unwrap().is_one());
        assert!(x_coeff(3, 1, 0, 2, &q).unwrap().is_zero());
        for m in 0..=4 {
            for n in 0..=m {
                assert_eq!(x_mn_from_coeffs(m, n, &q).unwrap(), x_mn_direct(m, n, &q).unwrap(), "m={m} n={n}");
            }
        }
        assert!(x_coeff(1, 0, 0, 0, &Rational::zero()).is_err());
    }

    #[test]
    fn r_r_values() {
        let z = ParamPoint::new(r(0, 1), r(0, 1), r(0, 1), r(0, 1), r(1, 3)).unwrap();
        assert!(r_r_scalar(&z, 2).unwrap().is_zero());
        let p = point();
        let one = Rational::one();
        let sbd = p.b.clone() + p.d.clone();
        let expect = (p.q.clone() * sbd.clone() - sbd * p.abcd()
            + p.bd() * (p.a.clone() + p.c.clone()) * (one.clone() - p.q.clone()))
        .div(&(one - p.abcd()))
        .unwrap();
        assert_eq!(r_r_scalar(&p, 1).unwrap(), expect);
    }

    #[test]
    fn bounds_parse() {
        let b: Section7Bounds = "m=3,N=5".parse().unwrap();
        assert_eq!((b.m_max, b.r_max, b.n_max), (3, 4, 5));
        assert!("z=1".parse::<Section7Bounds>().is_err());
    }

    #[test]
    fn bundle_holds_at_a_point() {
        let ops = build_operators(&point()).unwrap();
        let bounds = Section7Bounds { m_max: 4, r_max: 2, n_max: 5, coeff_m_max: 4 };
        let rep = verify_section7(&ops, bounds).unwrap();
        let bad: Vec<_> = rep.failures().map(|c| format!("{} [{}]", c.identity, c.indices)).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
