//! Partition functions, Koornwinder moments, Askey–Wilson moments and the
//! checkers for the identities relating them.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::ansatz::{build_operators, eval_bra_word_ket, BandOperator, Operators, ParamPoint};
use crate::error::{Error, Result};
use crate::exact::{Domain, Field, GaussianRational, Matrix, Poly, Rational, Ring, SeriesY};
use crate::motzkin::{hankel_ratio, k_r as path_k_r, path_gf};
use crate::partition::Partition;
use crate::report::Report;

/// Moment computations at one parameter point, with memos for `Z_N(ξ)`,
/// `Z_{N,r}(ξ)` and `K_λ(ξ)`.
///
/// The memos sit behind mutexes, so an engine may be shared between threads.
pub struct MomentEngine<F: Field> {
    ops: Operators<F>,
    xi_op: BandOperator<Poly<F>>,
    z_memo: Mutex<Vec<Poly<F>>>,
    z2_memo: Mutex<HashMap<(usize, usize), Poly<F>>>,
    k_memo: Mutex<HashMap<Partition, Poly<F>>>,
}

impl<F: Field> MomentEngine<F> {
    pub fn new(p: &ParamPoint<F>) -> Result<Self> {
        let ops = build_operators(p)?;
        let xi_op = xi_d_plus_e(&ops);
        Ok(MomentEngine {
            ops,
            xi_op,
            z_memo: Mutex::new(vec![Poly::one()]),
            z2_memo: Mutex::default(),
            k_memo: Mutex::default(),
        })
    }

    pub fn point(&self) -> &ParamPoint<F> {
        &self.ops.point
    }

    pub fn operators(&self) -> &Operators<F> {
        &self.ops
    }

    /// `ξD + E` with entries in `F[ξ]`.
    pub fn xi_operator(&self) -> &BandOperator<Poly<F>> {
        &self.xi_op
    }

    /// `Z_N(ξ) = ⟨W|(ξD+E)^N|V⟩`
    pub fn z(&self, n: usize) -> Result<Poly<F>> {
        if let Some(z) = self.z_memo.lock().expect("memo poisoned").get(n) {
            return Ok(z.clone());
        }
        let word = vec![&self.xi_op; n];
        let z = eval_bra_word_ket(&word, 0)?;
        let mut memo = self.z_memo.lock().expect("memo poisoned");
        // fill sequentially so indices stay aligned
        while memo.len() <= n {
            let k = memo.len();
            let v = if k == n { z.clone() } else { eval_bra_word_ket(&vec![&self.xi_op; k], 0)? };
            memo.push(v);
        }
        Ok(z)
    }

    /// `⟨W|A^r|V⟩`
    pub fn a_bracket(&self, r: usize) -> Result<F> {
        eval_bra_word_ket(&vec![&self.ops.a; r], 0)
    }

    /// `Z_{N,r}(ξ) = [y^r]⟨W|(ξD+E+yA)^N|V⟩ / ⟨W|A^r|V⟩`
    pub fn z_two_species(&self, n: usize, r: usize) -> Result<Poly<F>> {
        if r > n {
            return Err(Error::precondition(format!("need r ≤ N, got r={r}, N={n}")));
        }
        if let Some(v) = self.z2_memo.lock().expect("memo poisoned").get(&(n, r)) {
            return Ok(v.clone());
        }
        let norm = self.a_bracket(r)?;
        if norm.is_zero() {
            return Err(Error::degenerate(format!("<W|A^{r}|V>")));
        }
        let base = self.xi_op.map(move |x| SeriesY::constant(x, r));
        let marked = self.ops.a.map(move |x| SeriesY::linear(Poly::constant(x), r));
        let op = base.add(&marked).cached();
        let total: SeriesY<Poly<F>> = eval_bra_word_ket(&vec![&op; n], 0)?;
        let v = total.coeff(r).scale(&norm.inv()?);
        self.z2_memo.lock().expect("memo poisoned").insert((n, r), v.clone());
        Ok(v)
    }

    /// `K_λ(ξ)` as a quotient of Hankel determinants in the `Z_N(ξ)`.
    pub fn k(&self, lambda: &Partition) -> Result<Poly<F>> {
        if let Some(v) = self.k_memo.lock().expect("memo poisoned").get(lambda) {
            return Ok(v.clone());
        }
        let top = (lambda.parts().first().copied().unwrap_or(0) + 2 * lambda.len()).saturating_sub(2);
        let zs = (0..=top).map(|n| self.z(n)).collect::<Result<Vec<_>>>()?;
        let v = hankel_ratio(&|n| Ok(zs[n].clone()), lambda)?;
        self.k_memo.lock().expect("memo poisoned").insert(lambda.clone(), v.clone());
        Ok(v)
    }

    /// `det(K_{(λ_i+j-i, 0^{n-j})})`, entries with a negative index are zero.
    pub fn jacobi_trudi_k(&self, lambda: &Partition) -> Result<Poly<F>> {
        let n = lambda.len();
        let parts = lambda.parts();
        let m = Matrix::try_from_fn(n, n, |i, j| {
            let idx = parts[i] as i64 + j as i64 - i as i64;
            if idx < 0 {
                Ok(Poly::zero())
            } else {
                self.k(&Partition::hook_row(idx as usize, n - 1 - j))
            }
        })?;
        Poly::determinant(&m)
    }

    /// `Π_{i<r} (ξ - q^i·ac)`, the printed normalization.
    pub fn k_r_poly(&self, r: usize) -> Poly<F> {
        k_r_poly(self.point(), r)
    }
}

fn xi_d_plus_e<F: Field>(ops: &Operators<F>) -> BandOperator<Poly<F>> {
    let xd = ops.d.map(|x| Poly::monomial(x, 1));
    let e = ops.e.map(Poly::constant);
    xd.add(&e).cached()
}

pub fn z<F: Field>(p: &ParamPoint<F>, n: usize) -> Result<Poly<F>> {
    MomentEngine::new(p)?.z(n)
}

pub fn z_two_species<F: Field>(p: &ParamPoint<F>, n: usize, r: usize) -> Result<Poly<F>> {
    MomentEngine::new(p)?.z_two_species(n, r)
}

pub fn k<F: Field>(p: &ParamPoint<F>, lambda: &Partition) -> Result<Poly<F>> {
    MomentEngine::new(p)?.k(lambda)
}

pub fn jacobi_trudi_k<F: Field>(p: &ParamPoint<F>, lambda: &Partition) -> Result<Poly<F>> {
    MomentEngine::new(p)?.jacobi_trudi_k(lambda)
}

/// `Π_{i<r} (ξ - q^i·ac)`
pub fn k_r_poly<F: Field>(p: &ParamPoint<F>, r: usize) -> Poly<F> {
    let ac = p.ac();
    (0..r).fold(Poly::one(), |acc, i| {
        acc * Poly::linear(-(p.q.pow(i as u32) * ac.clone()), F::one())
    })
}

/// `ρ_r = (1-q)^r / Π(ξ - q^i·ac)` as a (numerator, denominator) pair.
pub fn rho_r<F: Field>(p: &ParamPoint<F>, r: usize) -> (Poly<F>, Poly<F>) {
    let num = Poly::constant((F::one() - p.q.clone()).pow(r as u32));
    (num, k_r_poly(p, r))
}

/// `ρ̃_r = α^r (1-q)^r`
pub fn rho_tilde_r<F: Field>(p: &ParamPoint<F>, r: usize) -> F {
    (p.alpha.clone() * (F::one() - p.q.clone())).pow(r as u32)
}

/// Coefficients of the three-term recurrence of the Askey–Wilson polynomials.
#[derive(Debug, Clone)]
pub struct AwCoefficients<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub q: F,
}

impl<F: Field> AwCoefficients<F> {
    fn big_p(&self) -> F {
        self.a.clone() * self.b.clone() * self.c.clone() * self.d.clone()
    }

    fn one_minus_qp(&self, k: i64) -> Result<F> {
        Ok(F::one() - self.q.powi(k)? * self.big_p())
    }

    pub fn a_n(&self, n: usize) -> Result<F> {
        if n == 0 {
            return self.one_minus_qp(0)?.inv();
        }
        let n = n as i64;
        let den = self.one_minus_qp(2 * n - 1)? * self.one_minus_qp(2 * n)?;
        self.one_minus_qp(n - 1)?.checked_div(&den, "A_n denominator")
    }

    /// `s'` enters only through `abcd·s' = abc+abd+acd+bcd`, so zero
    /// parameters are allowed.
    pub fn b_n(&self, n: usize) -> Result<F> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let s = a.clone() + b.clone() + c.clone() + d.clone();
        let t = a.clone() * b.clone() * c.clone()
            + a.clone() * b.clone() * d.clone()
            + a.clone() * c.clone() * d.clone()
            + b.clone() * c.clone() * d.clone();
        let p = self.big_p();
        if n == 0 {
            // the q^{-1} factors cancel
            return (s - t).checked_div(&self.one_minus_qp(0)?, "B_0 denominator");
        }
        let n = n as i64;
        let q = &self.q;
        let qn1 = q.powi(n - 1)?;
        let bracket = (F::one() + q.powi(2 * n - 1)? * p.clone()) * (q.clone() * s.clone() + t.clone())
            - qn1.clone() * (F::one() + q.clone()) * (p * s + q.clone() * t);
        let den = self.one_minus_qp(2 * n - 2)? * self.one_minus_qp(2 * n)?;
        (qn1 * bracket).checked_div(&den, "B_n denominator")
    }

    pub fn c_n(&self, n: usize) -> Result<F> {
        if n == 0 {
            return Ok(F::zero());
        }
        let n = n as i64;
        let qn1 = self.q.powi(n - 1)?;
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let pairs = [
            a.clone() * b.clone(),
            a.clone() * c.clone(),
            a.clone() * d.clone(),
            b.clone() * c.clone(),
            b.clone() * d.clone(),
            c.clone() * d.clone(),
        ];
        let num = pairs
            .into_iter()
            .fold(F::one() - self.q.powi(n)?, |acc, x| acc * (F::one() - qn1.clone() * x));
        let den = self.one_minus_qp(2 * n - 2)? * self.one_minus_qp(2 * n - 1)?;
        num.checked_div(&den, "C_n denominator")
    }
}

/// The monic Jacobi operator of the Askey–Wilson weight in the variable x.
pub fn aw_jacobi_operator<F: Field>(p: &ParamPoint<F>) -> BandOperator<F> {
    let co = AwCoefficients {
        a: p.a.clone(),
        b: p.b.clone(),
        c: p.c.clone(),
        d: p.d.clone(),
        q: p.q.clone(),
    };
    let horizon = p.horizon;
    let within = move |n: usize| {
        if n > horizon {
            Err(Error::HorizonExceeded { index: n, horizon })
        } else {
            Ok(())
        }
    };
    let (c1, c2) = (co.clone(), co);
    let two = F::from_i64(2);
    let four = F::from_i64(4);
    BandOperator::tridiagonal(
        move |n| {
            within(n)?;
            c1.b_n(n)?.div(&two)
        },
        move |n| within(n + 1).map(|_| F::one()),
        move |n| {
            within(n + 1)?;
            (c2.a_n(n)? * c2.c_n(n + 1)?).div(&four)
        },
    )
    .cached()
}

/// `μ_N = ⟨W|J^N|V⟩`, so `μ₀ = 1`.
pub fn aw_moment<F: Field>(p: &ParamPoint<F>, n: usize) -> Result<F> {
    let j = aw_jacobi_operator(p);
    eval_bra_word_ket(&vec![&j; n], 0)
}

/// All of `μ_0..=μ_n` from one Jacobi operator.
pub fn aw_moments<F: Field>(p: &ParamPoint<F>, n: usize) -> Result<Vec<F>> {
    let j = aw_jacobi_operator(p);
    (0..=n).map(|k| eval_bra_word_ket(&vec![&j; k], 0)).collect()
}

/// `M_λ = det(μ_{λ_i+m-i+m-j}) / det(μ_{2m-i-j})`
pub fn m_lambda<F: Field>(p: &ParamPoint<F>, lambda: &Partition) -> Result<F> {
    let top = lambda.parts().first().copied().unwrap_or(0) + 2 * lambda.len();
    let mu = aw_moments(p, top)?;
    hankel_ratio(&|n| mu.get(n).cloned().ok_or(Error::precondition("moment index")), lambda)
}

/// The point `(ai, -bi, ci, -di)` over ℚ(i) whose boundary rates are the
/// ones attached to the Askey–Wilson parameters `(a, b, c, d)`.
pub fn aw_representation_point(p: &ParamPoint<Rational>) -> Result<ParamPoint<GaussianRational>> {
    let i = GaussianRational::i();
    let lift = |x: &Rational| GaussianRational::real(x.clone());
    ParamPoint::with_horizon(
        lift(&p.a) * i.clone(),
        -(lift(&p.b) * i.clone()),
        lift(&p.c) * i.clone(),
        -(lift(&p.d) * i),
        lift(&p.q),
        p.horizon,
    )
}

/// `θ = (1-q)/(2i)`
fn theta(q: &Rational) -> Result<GaussianRational> {
    let num = GaussianRational::real(Rational::one() - q.clone());
    num.div(&GaussianRational::imag(Rational::integer(2)))
}

/// `μ_N = θ^N·Z_N(-1)` with `Z` taken at the ℚ(i) point.
pub fn verify_aw_bridge(p: &ParamPoint<Rational>, n_max: usize) -> Result<Report> {
    let mut rep = Report::new();
    let mu = aw_moments(p, n_max)?;
    let engine = MomentEngine::new(&aw_representation_point(p)?)?;
    let th = theta(&p.q)?;
    let minus_one = GaussianRational::real(Rational::integer(-1));
    for (n, mu_n) in mu.iter().enumerate() {
        let lhs = GaussianRational::real(mu_n.clone());
        let rhs = th.pow(n as u32) * engine.z(n)?.eval(&minus_one);
        rep.compare("mu_N = ((1-q)/2i)^N Z_N(-1)", format!("N={n}"), &lhs, &rhs);
    }
    Ok(rep)
}

/// `M_λ = θ^{|λ|}·K_λ(-1)` for every listed partition.
pub fn verify_m_lambda(p: &ParamPoint<Rational>, partitions: &[Partition]) -> Result<Report> {
    let mut rep = Report::new();
    let engine = MomentEngine::new(&aw_representation_point(p)?)?;
    let th = theta(&p.q)?;
    let minus_one = GaussianRational::real(Rational::integer(-1));
    for lambda in partitions {
        let lhs = GaussianRational::real(m_lambda(p, lambda)?);
        let rhs = th.pow(lambda.size() as u32) * engine.k(lambda)?.eval(&minus_one);
        rep.compare("M_lambda = ((1-q)/2i)^|lambda| K_lambda(-1)", lambda.to_string(), &lhs, &rhs);
    }
    Ok(rep)
}

pub const MAIN_THEOREM: &str = "K_(N-r,0^r) = Z_{N,r}/(1-q)^r";
pub const MAIN_THEOREM_UNSCALED: &str = "K_(N-r,0^r) = Z_{N,r}";
pub const MAIN_THEOREM_EDGE: &str = "K_(0^{N+1}) = Z_{N,N}/(1-q)^N";

/// The headline identity exactly as stated, one check per call.
///
/// `r = N` is accepted and recorded under its own identity name, since the
/// statement is only meaningful for `r < N`.
pub fn verify_main_theorem<F: Field>(engine: &MomentEngine<F>, n: usize, r: usize) -> Result<Report> {
    if r > n {
        return Err(Error::precondition("need r ≤ N"));
    }
    let mut rep = Report::new();
    let q = &engine.point().q;
    let lhs = engine.k(&Partition::hook_row(n - r, r))?;
    let scale = (F::one() - q.clone()).pow(r as u32).inv()?;
    let rhs = engine.z_two_species(n, r)?.scale(&scale);
    let name = if r == n { MAIN_THEOREM_EDGE } else { MAIN_THEOREM };
    rep.compare(name, format!("N={n}, r={r}"), &lhs, &rhs);
    Ok(rep)
}

/// The same comparison without the `(1-q)^r` factor.
pub fn verify_main_theorem_unscaled<F: Field>(engine: &MomentEngine<F>, n: usize, r: usize) -> Result<Report> {
    if r > n {
        return Err(Error::precondition("need r ≤ N"));
    }
    let mut rep = Report::new();
    let lhs = engine.k(&Partition::hook_row(n - r, r))?;
    let rhs = engine.z_two_species(n, r)?;
    rep.compare(MAIN_THEOREM_UNSCALED, format!("N={n}, r={r}"), &lhs, &rhs);
    Ok(rep)
}

pub const COROLLARY_PRINTED: &str = "K = CMotz(N,r) / prod(xi - q^i ac)";
pub const COROLLARY_PATH_WEIGHTS: &str = "K = CMotz(N,r) / prod c_{i,i+1}";

/// Which normalization of the partial-path count reproduces `K`.
#[derive(Debug, Clone)]
pub struct CorollaryOutcome {
    pub report: Report,
    pub printed_matches: bool,
    pub path_weights_match: bool,
}

pub fn verify_corollary_motzkin<F: Field>(engine: &MomentEngine<F>, n: usize, r: usize) -> Result<CorollaryOutcome> {
    if r > n {
        return Err(Error::precondition("need r ≤ N"));
    }
    let mut report = Report::new();
    let idx = format!("N={n}, r={r}");
    let c = engine.xi_operator();
    let k = engine.k(&Partition::hook_row(n - r, r))?;
    let cmotz = path_gf(c, n, r)?;

    let printed_matches = match cmotz.exact_div(&engine.k_r_poly(r)) {
        Ok(v) => report.compare(COROLLARY_PRINTED, idx.clone(), &k, &v),
        Err(Error::Inconsistent(msg)) => {
            report.assert(COROLLARY_PRINTED, idx.clone(), false, k.to_string(), msg);
            false
        }
        Err(e) => return Err(e),
    };
    let path_weights_match = match cmotz.exact_div(&path_k_r(c, r)?) {
        Ok(v) => report.compare(COROLLARY_PATH_WEIGHTS, idx.clone(), &k, &v),
        Err(Error::Inconsistent(msg)) => {
            report.assert(COROLLARY_PATH_WEIGHTS, idx.clone(), false, k.to_string(), msg);
            false
        }
        Err(e) => return Err(e),
    };
    // the two normalizations differ by (1-q)^r
    let scaled = path_k_r(c, r)?.scale(&(F::one() - engine.point().q.clone()).pow(r as u32));
    report.compare("prod c_{i,i+1} (1-q)^r = prod(xi - q^i ac)", idx, &scaled, &engine.k_r_poly(r));
    Ok(CorollaryOutcome { report, printed_matches, path_weights_match })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motzkin::generic_k;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(c: &[Rational]) -> Poly<Rational> {
        Poly::from_coeffs(c.to_vec())
    }

    fn generic() -> ParamPoint<Rational> {
        ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap()
    }

    fn tasep() -> ParamPoint<Rational> {
        let z = Rational::zero();
        ParamPoint::new(z.clone(), z.clone(), z.clone(), z.clone(), z).unwrap()
    }

    #[test]
    fn tasep_partition_functions() {
        let e = MomentEngine::new(&tasep()).unwrap();
        assert_eq!(e.z(0).unwrap(), Poly::one());
        assert_eq!(e.z(1).unwrap(), poly(&[r(1, 1), r(1, 1)]));
        assert_eq!(e.z(2).unwrap().eval(&Rational::one()), r(5, 1));
    }

    #[test]
    fn two_species_edges() {
        let e = MomentEngine::new(&generic()).unwrap();
        assert_eq!(e.z_two_species(3, 0).unwrap(), e.z(3).unwrap());
        assert_eq!(e.z_two_species(3, 3).unwrap(), Poly::one());
        // y¹ of the square
        let ops = e.operators();
        let x = e.xi_operator();
        let a = ops.a.map(Poly::constant);
        let expect = (eval_bra_word_ket(&[x, &a], 0).unwrap() + eval_bra_word_ket(&[&a, x], 0).unwrap())
            .scale(&e.a_bracket(1).unwrap().inv().unwrap());
        assert_eq!(e.z_two_species(2, 1).unwrap(), expect);
    }

    #[test]
    fn k_special_partitions() {
        let e = MomentEngine::new(&generic()).unwrap();
        assert_eq!(e.k(&Partition::hook_row(0, 2)).unwrap(), Poly::one());
        assert_eq!(e.k(&Partition::new(vec![]).unwrap()).unwrap(), Poly::one());
        assert_eq!(e.k(&Partition::hook_row(4, 0)).unwrap(), e.z(4).unwrap());
        let x = e.xi_operator();
        let expect = x.entry(0, 0).unwrap() + x.entry(1, 1).unwrap();
        assert_eq!(e.k(&Partition::hook_row(1, 1)).unwrap(), expect);
    }

    #[test]
    fn k_matches_path_oracle() {
        let e = MomentEngine::new(&generic()).unwrap();
        for parts in [vec![2, 1], vec![3, 0, 0], vec![2, 2]] {
            let lam = Partition::new(parts).unwrap();
            assert_eq!(e.k(&lam).unwrap(), generic_k(e.xi_operator(), &lam).unwrap(), "{lam}");
        }
    }

    #[test]
    fn jacobi_trudi_small() {
        let e = MomentEngine::new(&generic()).unwrap();
        let k = |p: Partition| e.k(&p).unwrap();
        let expect = k(Partition::hook_row(1, 1)) * k(Partition::hook_row(1, 0))
            - k(Partition::hook_row(2, 0)) * k(Partition::hook_row(0, 1));
        assert_eq!(e.jacobi_trudi_k(&"1,1".parse().unwrap()).unwrap(), expect);
        let lam: Partition = "2,1".parse().unwrap();
        assert_eq!(e.jacobi_trudi_k(&lam).unwrap(), e.k(&lam).unwrap());
    }

    #[test]
    fn normalizations() {
        let p = generic();
        assert_eq!(k_r_poly(&p, 0), Poly::one());
        assert_eq!(k_r_poly(&p, 1), poly(&[-p.ac(), Rational::one()]));
        let om = Rational::one() - p.q.clone();
        assert_eq!(rho_tilde_r(&p, 2), p.alpha.clone() * p.alpha.clone() * om.clone() * om);
    }

    #[test]
    fn jacobi_zero_parameters() {
        let p = ParamPoint::new(r(0, 1), r(0, 1), r(0, 1), r(0, 1), r(1, 3)).unwrap();
        let j = aw_jacobi_operator(&p);
        for n in 0..4 {
            assert!(j.entry(n, n).unwrap().is_zero());
            assert!(j.entry(n, n + 1).unwrap().is_one());
        }
        let co = AwCoefficients { a: r(0, 1), b: r(0, 1), c: r(0, 1), d: r(0, 1), q: r(1, 3) };
        assert_eq!(co.c_n(1).unwrap(), r(2, 3));
        assert!(aw_moment(&p, 0).unwrap().is_one());
    }

    #[test]
    fn b0_matches_printed_form() {
        // the printed B_0 carries q^{-1}; at q ≠ 0 it must reduce to (s-t)/(1-P)
        let co = AwCoefficients { a: r(1, 2), b: r(1, 3), c: r(-1, 5), d: r(1, 7), q: r(1, 4) };
        let (a, b, c, d, q) = (&co.a, &co.b, &co.c, &co.d, &co.q);
        let s = a.clone() + b.clone() + c.clone() + d.clone();
        let pp = a.clone() * b.clone() * c.clone() * d.clone();
        let sp = a.inv().unwrap() + b.inv().unwrap() + c.inv().unwrap() + d.inv().unwrap();
        let qi = q.inv().unwrap();
        let one = Rational::one();
        let den = (one.clone() - qi.clone() * qi.clone() * pp.clone()) * (one.clone() - pp.clone());
        let bracket = (one.clone() + qi.clone() * pp.clone()) * (q.clone() * s.clone() + pp.clone() * sp.clone())
            - qi.clone() * (one + q.clone()) * pp.clone() * (s + q.clone() * sp);
        let printed = (qi * bracket).div(&den).unwrap();
        assert_eq!(co.b_n(0).unwrap(), printed);
        assert_eq!(aw_moment(&ParamPoint::new(co.a.clone(), co.b.clone(), co.c.clone(), co.d.clone(), co.q.clone()).unwrap(), 1).unwrap(), printed.div(&r(2, 1)).unwrap());
    }

    #[test]
    fn gaussian_point_has_printed_rates() {
        let p = generic();
        let g = aw_representation_point(&p).unwrap();
        let i = GaussianRational::i();
        let re = |x: &Rational| GaussianRational::real(x.clone());
        let one = GaussianRational::real(Rational::one());
        let om = one.clone() - re(&p.q);
        let den_ac = one.clone() - re(&p.ac()) + re(&p.a) * i.clone() + re(&p.c) * i.clone();
        let den_bd = one - re(&p.bd()) - re(&p.b) * i.clone() - re(&p.d) * i;
        assert_eq!(g.alpha, om.div(&den_ac).unwrap());
        assert_eq!(g.gamma, (om.clone() * re(&p.ac())).div(&den_ac).unwrap());
        assert_eq!(g.beta, om.div(&den_bd).unwrap());
        assert_eq!(g.delta, (om * re(&p.bd())).div(&den_bd).unwrap());
    }

    #[test]
    fn aw_bridge_small() {
        let rep = verify_aw_bridge(&generic(), 4).unwrap();
        assert!(rep.all_hold(), "{rep}");
        let parts: Vec<Partition> = ["1", "2,1", "1,1,0"].iter().map(|s| s.parse().unwrap()).collect();
        let rep = verify_m_lambda(&generic(), &parts).unwrap();
        assert!(rep.all_hold(), "{rep}");
    }

    #[test]
    fn corollary_conventions() {
        let e = MomentEngine::new(&generic()).unwrap();
        let out = verify_corollary_motzkin(&e, 2, 1).unwrap();
        assert!(out.path_weights_match);
        assert!(!out.printed_matches);
        let edge = verify_corollary_motzkin(&e, 1, 1).unwrap();
        assert!(edge.path_weights_match);
        let trivial = verify_corollary_motzkin(&e, 3, 0).unwrap();
        assert!(trivial.printed_matches && trivial.path_weights_match);
    }

    #[test]
    fn main_theorem_scaling() {
        let e = MomentEngine::new(&generic()).unwrap();
        let printed = verify_main_theorem(&e, 2, 1).unwrap();
        let unscaled = verify_main_theorem_unscaled(&e, 2, 1).unwrap();
        println!("{printed}{unscaled}");
        assert!(unscaled.all_hold());
        assert!(verify_main_theorem(&e, 3, 0).unwrap().all_hold());
        // at q = 0 the two statements coincide
        let t = MomentEngine::new(&tasep()).unwrap();
        assert!(verify_main_theorem(&t, 3, 1).unwrap().all_hold());
    }
}
