//! Words in D, E, A: replacement sets, the `inv_E` statistic, normal forms
//! under `DE = qED + D + E`, and the refinement identities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::ansatz::{eval_bra_word_ket, BandOperator, Operators};
use crate::error::{Error, Result};
use crate::exact::{Field, Poly, Ring, SeriesY};
use crate::moments::{rho_tilde_r, MomentEngine};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    D,
    E,
    A,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::A => 'A',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    pub fn is_two_letter(&self) -> bool {
        !self.0.contains(&Letter::A)
    }

    /// All `2^n` words over `{D, E}`.
    pub fn all_de(n: usize) -> Vec<Word> {
        (0..n)
            .map(|_| [Letter::D, Letter::E])
            .multi_cartesian_product()
            .map(Word)
            .chain((n == 0).then(Word::default))
            .collect()
    }

    /// The operator sequence for this word.
    pub fn operators<'a, F: Field>(&self, ops: &'a Operators<F>) -> Vec<&'a BandOperator<F>> {
        self.0
            .iter()
            .map(|l| match l {
                Letter::D => &ops.d,
                Letter::E => &ops.e,
                Letter::A => &ops.a,
            })
            .collect()
    }

    /// `⟨W| X |V^r⟩`
    pub fn bracket<F: Field>(&self, ops: &Operators<F>, r: usize) -> Result<F> {
        eval_bra_word_ket(&self.operators(ops), r)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'D' => Ok(Letter::D),
                'E' => Ok(Letter::E),
                'A' => Ok(Letter::A),
                _ => Err(Error::Parse(format!("letter {c:?} is not one of D, E, A"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A word `Z ∈ S_r(X)` together with where its A's came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replacement {
    pub base: Word,
    /// Replaced positions, 0-based and increasing.
    pub positions: Vec<usize>,
}

impl Replacement {
    pub fn word(&self) -> Word {
        let mut z = self.base.clone();
        for &i in &self.positions {
            z.0[i] = Letter::A;
        }
        z
    }

    /// Positions that were D in the base word.
    pub fn d_set(&self) -> Vec<usize> {
        self.positions.iter().copied().filter(|&i| self.base.0[i] == Letter::D).collect()
    }

    pub fn e_set(&self) -> Vec<usize> {
        self.positions.iter().copied().filter(|&i| self.base.0[i] == Letter::E).collect()
    }

    /// `Σ_{j ∈ E(Z)} #{i ∈ D(Z) ∪ E(Z) : i < j}`
    pub fn inv_e(&self) -> usize {
        // positions are sorted, so the count below j is its rank
        self.positions
            .iter()
            .enumerate()
            .filter(|(_, &j)| self.base.0[j] == Letter::E)
            .map(|(rank, _)| rank)
            .sum()
    }
}

/// `S_r(X)`: every way of turning exactly `r` letters of `X` into A.
pub fn s_r(x: &Word, r: usize) -> Result<Vec<Replacement>> {
    if !x.is_two_letter() {
        return Err(Error::precondition(format!("base word {x} must be over D, E")));
    }
    if r > x.len() {
        return Err(Error::precondition(format!("r={r} exceeds word length {}", x.len())));
    }
    Ok((0..x.len())
        .combinations(r)
        .map(|positions| Replacement { base: x.clone(), positions })
        .collect())
}

/// Linear combination of words.
pub type WordCombination<R> = BTreeMap<Word, R>;

fn add_term<R: Ring>(acc: &mut WordCombination<R>, w: Word, c: R) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(w.clone()).or_insert_with(R::zero);
    *slot = slot.clone() + c;
    if slot.is_zero() {
        acc.remove(&w);
    }
}

/// Rewrite the leftmost `DE` as `qED + D + E` until only words `E^ℓ D^m`
/// remain. Letters other than D and E are rejected.
pub fn normal_form<R: Ring>(x: &Word, q: &R) -> Result<WordCombination<R>> {
    if !x.is_two_letter() {
        return Err(Error::precondition(format!("{x} contains A")));
    }
    let mut done = WordCombination::new();
    let mut todo = vec![(x.clone(), R::one())];
    while let Some((w, c)) = todo.pop() {
        let Some(i) = w.0.windows(2).position(|p| p == [Letter::D, Letter::E]) else {
            add_term(&mut done, w, c);
            continue;
        };
        let splice = |mid: &[Letter]| {
            let mut v = w.0[..i].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w.0[i + 2..]);
            Word(v)
        };
        todo.push((splice(&[Letter::E, Letter::D]), c.clone() * q.clone()));
        todo.push((splice(&[Letter::D]), c.clone()));
        todo.push((splice(&[Letter::E]), c));
    }
    Ok(done)
}

/// `⟨W|X|V⟩` against the sum over the normal form.
pub fn verify_normal_form<F: Field>(ops: &Operators<F>, x: &Word) -> Result<Report> {
    let mut rep = Report::new();
    let lhs = x.bracket(ops, 0)?;
    let mut rhs = F::zero();
    for (w, c) in normal_form(x, &ops.point.q)? {
        rhs = rhs + c * w.bracket(ops, 0)?;
    }
    rep.compare("<W|X|V> = <W|normal_form(X)|V>", x.to_string(), &lhs, &rhs);
    Ok(rep)
}

/// `⟨W|X|V^r⟩ ρ̃_r = Σ_{Z ∈ S_r(X)} q^{inv_E} α^{|D(Z)|} γ^{|E(Z)|} ⟨W|Z|V⟩/⟨W|A^r|V⟩`
pub fn verify_refinement<F: Field>(ops: &Operators<F>, x: &Word, r: usize) -> Result<Report> {
    let mut rep = Report::new();
    let lhs = x.bracket(ops, r)? * rho_tilde_r(&ops.point, r);
    let rhs = refinement_rhs(ops, x, r)?;
    rep.compare("refinement", format!("X={x}, r={r}"), &lhs, &rhs);
    Ok(rep)
}

fn a_bracket<F: Field>(ops: &Operators<F>, r: usize) -> Result<F> {
    let norm = eval_bra_word_ket(&vec![&ops.a; r], 0)?;
    if norm.is_zero() {
        return Err(Error::degenerate(format!("<W|A^{r}|V>")));
    }
    Ok(norm)
}

fn refinement_rhs<F: Field>(ops: &Operators<F>, x: &Word, r: usize) -> Result<F> {
    let p = &ops.point;
    let norm = a_bracket(ops, r)?;
    let mut sum = F::zero();
    for z in s_r(x, r)? {
        let weight = p.q.pow(z.inv_e() as u32)
            * p.alpha.pow(z.d_set().len() as u32)
            * p.gamma.pow(z.e_set().len() as u32);
        sum = sum + weight * z.word().bracket(ops, 0)?;
    }
    sum.div(&norm)
}

/// `⟨W|D^N|V^r⟩ ρ̃_r = [y^r]⟨W|(D + yαA)^N|V⟩ / ⟨W|A^r|V⟩`
pub fn verify_finalcheck<F: Field>(ops: &Operators<F>, n: usize, r: usize) -> Result<Report> {
    if r > n {
        return Err(Error::precondition("need r ≤ N"));
    }
    let mut rep = Report::new();
    let p = &ops.point;
    let lhs = eval_bra_word_ket(&vec![&ops.d; n], r)? * rho_tilde_r(p, r);
    let alpha = p.alpha.clone();
    let base = ops.d.map(move |x| SeriesY::constant(x, r));
    let marked = ops.a.map(move |x| SeriesY::linear(x * alpha.clone(), r));
    let op = base.add(&marked);
    let total: SeriesY<F> = eval_bra_word_ket(&vec![&op; n], 0)?;
    let rhs = total.coeff(r).div(&a_bracket(ops, r)?)?;
    rep.compare("finalcheck", format!("N={n}, r={r}"), &lhs, &rhs);
    Ok(rep)
}

/// Summing the refinement over `X ∈ {D,E}^N` with weight `ξ^{|X|_D}`:
/// both sides must equal `Z_{N,r}(ξ)·Π_{i<r}(αξ + q^i γ)`, and the left
/// side must also equal `⟨W|(ξD+E)^N|V^r⟩ ρ̃_r`.
pub fn verify_main2_aggregate<F: Field>(engine: &MomentEngine<F>, n: usize, r: usize) -> Result<Report> {
    if r > n {
        return Err(Error::precondition("need r ≤ N"));
    }
    let ops = engine.operators();
    let p = &ops.point;
    let idx = format!("N={n}, r={r}");
    let mut rep = Report::new();
    let rho = rho_tilde_r(p, r);
    let mut lhs = Poly::zero();
    let mut rhs = Poly::zero();
    for x in Word::all_de(n) {
        let xi_pow = Poly::monomial(F::one(), x.count(Letter::D));
        lhs = lhs + xi_pow.scale(&(x.bracket(ops, r)? * rho.clone()));
        rhs = rhs + xi_pow.scale(&refinement_rhs(ops, &x, r)?);
    }
    let factor = (0..r).fold(Poly::one(), |acc, i| {
        acc * Poly::linear(p.q.pow(i as u32) * p.gamma.clone(), p.alpha.clone())
    });
    let target = engine.z_two_species(n, r)? * factor;
    let direct = eval_bra_word_ket(&vec![engine.xi_operator(); n], r)?.scale(&rho);
    rep.compare("sum_X refinement lhs = Z_{N,r} prod(alpha xi + q^i gamma)", idx.clone(), &lhs, &target);
    rep.compare("sum_X refinement rhs = Z_{N,r} prod(alpha xi + q^i gamma)", idx.clone(), &rhs, &target);
    rep.compare("<W|(xi D+E)^N|V^r> rho~_r = sum_X lhs", idx, &direct, &lhs);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{build_operators, ParamPoint};
    use crate::exact::Rational;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ops() -> Operators<Rational> {
        let r = Rational::new;
        build_operators(&ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap()).unwrap()
    }

    #[test]
    fn replacement_sets() {
        assert_eq!(s_r(&w("DE"), 0).unwrap().iter().map(|z| z.word()).collect_vec(), vec![w("DE")]);
        let one: Vec<Word> = s_r(&w("DE"), 1).unwrap().iter().map(|z| z.word()).collect();
        assert_eq!(one, vec![w("AE"), w("DA")]);
        assert_eq!(s_r(&w("DE"), 2).unwrap()[0].word(), w("AA"));
        assert!(s_r(&w("DA"), 1).is_err());
        assert_eq!(s_r(&w("DEDED"), 2).unwrap().len(), 10);
    }

    #[test]
    fn inv_e_examples() {
        assert_eq!(s_r(&w("DE"), 2).unwrap()[0].inv_e(), 1);
        assert_eq!(s_r(&w("ED"), 2).unwrap()[0].inv_e(), 0);
        assert!(s_r(&w("DDD"), 2).unwrap().iter().all(|z| z.inv_e() == 0));
        // E E E fully replaced: 0 + 1 + 2
        assert_eq!(s_r(&w("EEE"), 3).unwrap()[0].inv_e(), 3);
    }

    #[test]
    fn normal_form_examples() {
        let q = Poly::<Rational>::var();
        let one = Poly::<Rational>::one();
        let nf = normal_form(&w("ED"), &q).unwrap();
        assert_eq!(nf.len(), 1);
        let nf = normal_form(&w("DE"), &q).unwrap();
        assert_eq!(nf[&w("ED")], q);
        assert_eq!(nf[&w("D")], one);
        assert_eq!(nf[&w("E")], one);
        let nf = normal_form(&w("DDE"), &q).unwrap();
        assert_eq!(nf[&w("EDD")], q.clone() * q.clone());
        assert_eq!(nf[&w("DD")], one.clone() + q.clone());
        assert_eq!(nf[&w("ED")], q.clone() + q.clone());
        assert_eq!(nf[&w("D")], one);
        assert_eq!(nf[&w("E")], one);
        assert_eq!(nf.len(), 5);
    }

    #[test]
    fn normal_form_is_sound() {
        let ops = ops();
        for n in 0..=4 {
            for x in Word::all_de(n) {
                assert!(verify_normal_form(&ops, &x).unwrap().all_hold(), "{x}");
            }
        }
    }

    #[test]
    fn refinement_small_words() {
        let ops = ops();
        for x in Word::all_de(3) {
            for r in 0..=3 {
                let rep = verify_refinement(&ops, &x, r).unwrap();
                assert!(rep.all_hold(), "{rep}");
            }
        }
    }

    #[test]
    fn finalcheck_small() {
        let ops = ops();
        for (n, r) in [(0, 0), (3, 0), (3, 1), (2, 2), (4, 3)] {
            assert!(verify_finalcheck(&ops, n, r).unwrap().all_hold(), "N={n} r={r}");
        }
    }

    #[test]
    fn main2_aggregate_small() {
        let r = Rational::new;
        let p = ParamPoint::new(r(1, 2), r(1, 3), r(-1, 5), r(1, 7), r(1, 4)).unwrap();
        let e = MomentEngine::new(&p).unwrap();
        for (n, k) in [(2, 1), (3, 2), (3, 0)] {
            let rep = verify_main2_aggregate(&e, n, k).unwrap();
            assert!(rep.all_hold(), "{rep}");
        }
    }

    #[test]
    fn word_strings() {
        assert_eq!(w("DEA").to_string(), "DEA");
        assert!("DX".parse::<Word>().is_err());
        assert_eq!(serde_json::to_string(&w("AE")).unwrap(), "\"AE\"");
        assert_eq!(Word::all_de(0), vec![Word::default()]);
        assert_eq!(Word::all_de(3).len(), 8);
    }
}
