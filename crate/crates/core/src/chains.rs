//! The discrete-time single- and two-species ASEP on `N` sites: exact
//! transition matrices, stationary distributions, Matrix Ansatz weights and a
//! seeded simulator.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::ansatz::{build_operators, eval_bra_word_ket, ParamPoint, Rates};
use crate::error::{Error, Result};
use crate::exact::{solve, Field, Matrix, Rational, Ring};
use crate::moments::MomentEngine;
use crate::report::Report;

/// Hopping and boundary rates; `u` is the right-hop rate in the bulk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRates<F> {
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
    pub delta: F,
    pub q: F,
    pub u: F,
}

impl<F: Field> From<Rates<F>> for ChainRates<F> {
    fn from(r: Rates<F>) -> Self {
        ChainRates { alpha: r.alpha, beta: r.beta, gamma: r.gamma, delta: r.delta, q: r.q, u: F::one() }
    }
}

/// A configuration: 0 is a hole, 1 a light and 2 a heavy particle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub Vec<u8>);

impl State {
    pub fn count(&self, species: u8) -> usize {
        self.0.iter().filter(|&&s| s == species).count()
    }

    /// `●`/`.` rendering for single-species states.
    pub fn to_dots(&self) -> String {
        self.0.iter().map(|&s| if s == 2 { '●' } else { '.' }).collect()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for State {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::Parse(format!("site {c:?} is not 0, 1 or 2"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(State)
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `B_{N,r}` in lexicographic order.
pub fn states(n: usize, r: usize) -> Vec<State> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut sites = vec![0u8; n];
        for k in (0..n).rev() {
            sites[k] = (c % 3) as u8;
            c /= 3;
        }
        let s = State(sites);
        if s.count(1) == r {
            out.push(s);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ChainSpec<F> {
    pub n: usize,
    pub r: usize,
    pub rates: ChainRates<F>,
    pub states: Vec<State>,
    pub index: HashMap<State, usize>,
    /// Row-stochastic: `p[(i, j)]` is the probability of moving from state i to j.
    pub p: Matrix<F>,
}

/// The two-species chain on `B_{N,r}`; at `r = 0` this is the ordinary ASEP.
pub fn build_chain<F: Field>(n: usize, r: usize, rates: &ChainRates<F>) -> Result<ChainSpec<F>> {
    if n == 0 || r > n {
        return Err(Error::precondition(format!("need N ≥ 1 and r ≤ N, got N={n}, r={r}")));
    }
    let sts = states(n, r);
    let index: HashMap<State, usize> = sts.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let k = sts.len();
    let scale = F::from_i64(n as i64 + 1).inv()?;
    let mut p = Matrix::<F>::zeros(k, k);
    for (i, s) in sts.iter().enumerate() {
        let mut push = |t: State, rate: &F| {
            let j = index[&t];
            p[(i, j)] = p[(i, j)].clone() + rate.clone() * scale.clone();
        };
        for pos in 0..n.saturating_sub(1) {
            let (x, y) = (s.0[pos], s.0[pos + 1]);
            if x == y {
                continue;
            }
            let mut t = s.clone();
            t.0.swap(pos, pos + 1);
            // larger species on the left moves right at rate u, back at q
            if x > y {
                push(t, &rates.u);
            } else {
                push(t, &rates.q);
            }
        }
        let mut set = |pos: usize, from: u8, to: u8, rate: &F| {
            if s.0[pos] == from {
                let mut t = s.clone();
                t.0[pos] = to;
                let j = index[&t];
                p[(i, j)] = p[(i, j)].clone() + rate.clone() * scale.clone();
            }
        };
        set(0, 0, 2, &rates.alpha);
        set(0, 2, 0, &rates.gamma);
        set(n - 1, 2, 0, &rates.beta);
        set(n - 1, 0, 2, &rates.delta);
        let off: F = (0..k).filter(|&j| j != i).fold(F::zero(), |acc, j| acc + p[(i, j)].clone());
        p[(i, i)] = F::one() - off;
    }
    Ok(ChainSpec { n, r, rates: rates.clone(), states: sts, index, p })
}

/// The single-species chain on `{○, ●}^N`, written directly from its own
/// transition rules. Sites are `false` for ○ and `true` for ●.
pub fn build_single_species<F: Field>(n: usize, rates: &ChainRates<F>) -> Result<(Vec<Vec<bool>>, Matrix<F>)> {
    if n == 0 {
        return Err(Error::precondition("need N ≥ 1"));
    }
    let words: Vec<Vec<bool>> = (0..1usize << n).map(|m| (0..n).map(|k| m >> (n - 1 - k) & 1 == 1).collect()).collect();
    let idx = |w: &[bool]| w.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
    let scale = F::from_i64(n as i64 + 1).inv()?;
    let k = words.len();
    let mut p = Matrix::<F>::zeros(k, k);
    for (i, w) in words.iter().enumerate() {
        for pos in 0..n - 1 {
            if w[pos] && !w[pos + 1] {
                let mut y = w.clone();
                y.swap(pos, pos + 1);
                p[(i, idx(&y))] = p[(i, idx(&y))].clone() + rates.u.clone() * scale.clone();
                // and the reverse hop from y back to w
                p[(idx(&y), i)] = p[(idx(&y), i)].clone() + rates.q.clone() * scale.clone();
            }
        }
        let mut flip = |pos: usize, from: bool, rate: &F| {
            if w[pos] == from {
                let mut y = w.clone();
                y[pos] = !from;
                p[(i, idx(&y))] = p[(i, idx(&y))].clone() + rate.clone() * scale.clone();
            }
        };
        flip(0, false, &rates.alpha);
        flip(n - 1, true, &rates.beta);
        flip(0, true, &rates.gamma);
        flip(n - 1, false, &rates.delta);
    }
    for i in 0..k {
        let off: F = (0..k).filter(|&j| j != i).fold(F::zero(), |acc, j| acc + p[(i, j)].clone());
        p[(i, i)] = F::one() - off;
    }
    Ok((words, p))
}

/// Probability of one step from `x` to `y ≠ x`, re-derived by matching the
/// pair against every rule.
pub fn rule_probability<F: Field>(x: &State, y: &State, rates: &ChainRates<F>) -> Result<F> {
    let n = x.0.len();
    let diff: Vec<usize> = (0..n).filter(|&k| x.0[k] != y.0[k]).collect();
    let scale = F::from_i64(n as i64 + 1).inv()?;
    let mut total = F::zero();
    match diff.as_slice() {
        [k, l] if *l == k + 1 && x.0[*k] == y.0[*l] && x.0[*l] == y.0[*k] => {
            let (a, b) = (x.0[*k], x.0[*l]);
            // 21→12, 20→02, 10→01 at rate u; the reverses at q
            total = if a > b { rates.u.clone() } else { rates.q.clone() };
        }
        [k] => {
            let (from, to) = (x.0[*k], y.0[*k]);
            if *k == 0 && from == 0 && to == 2 {
                total = total + rates.alpha.clone();
            }
            if *k == 0 && from == 2 && to == 0 {
                total = total + rates.gamma.clone();
            }
            if *k == n - 1 && from == 2 && to == 0 {
                total = total + rates.beta.clone();
            }
            if *k == n - 1 && from == 0 && to == 2 {
                total = total + rates.delta.clone();
            }
        }
        _ => {}
    }
    Ok(total * scale)
}

/// Exact probabilities, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution<F> {
    pub states: Vec<State>,
    pub probs: Vec<F>,
}

impl<F: Field> StationaryDistribution<F> {
    pub fn get(&self, s: &State) -> Option<&F> {
        self.states.iter().position(|t| t == s).map(|i| &self.probs[i])
    }
}

impl<F: Field + Serialize> Serialize for StationaryDistribution<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.states.len()))?;
        for (st, p) in self.states.iter().zip(&self.probs) {
            m.serialize_entry(&st.to_string(), p)?;
        }
        m.end()
    }
}

/// Solve `πP = π`, `Σπ = 1` exactly; a reducible chain gives a singular system.
pub fn stationary_of<F: Field>(p: &Matrix<F>) -> Result<Vec<F>> {
    let k = p.rows();
    // (Pᵀ - I)π = 0 with the last equation replaced by normalization
    let mut m = Matrix::from_fn(k, k, |i, j| {
        let v = p[(j, i)].clone();
        if i == j {
            v - F::one()
        } else {
            v
        }
    });
    for j in 0..k {
        m[(k - 1, j)] = F::one();
    }
    let mut rhs = vec![F::zero(); k];
    rhs[k - 1] = F::one();
    let pi = solve(&m, &rhs).map_err(|e| match e {
        Error::Singular(msg) => Error::Singular(format!("stationary distribution is not unique ({msg})")),
        other => other,
    })?;
    // πP = π must hold in full, including the replaced equation
    for j in 0..k {
        let v = (0..k).fold(F::zero(), |acc, i| acc + pi[i].clone() * p[(i, j)].clone());
        if v != pi[j] {
            return Err(Error::Inconsistent(format!("πP ≠ π in column {j}")));
        }
    }
    Ok(pi)
}

pub fn stationary<F: Field>(c: &ChainSpec<F>) -> Result<StationaryDistribution<F>> {
    Ok(StationaryDistribution { states: c.states.clone(), probs: stationary_of(&c.p)? })
}

/// Unnormalized Matrix Ansatz weights `⟨W|Π M_{τ_i}|V⟩` with `D`, `A`, `E`
/// for 2, 1, 0, and their sum.
#[derive(Debug, Clone)]
pub struct AnsatzWeights<F> {
    pub states: Vec<State>,
    pub weights: Vec<F>,
    pub total: F,
}

impl<F: Field> AnsatzWeights<F> {
    pub fn normalized(&self) -> Result<Vec<F>> {
        if self.total.is_zero() {
            return Err(Error::degenerate("sum of ansatz weights"));
        }
        let inv = self.total.inv()?;
        Ok(self.weights.iter().map(|w| w.clone() * inv.clone()).collect())
    }
}

pub fn ansatz_weights<F: Field>(p: &ParamPoint<F>, n: usize, r: usize) -> Result<AnsatzWeights<F>> {
    let ops = build_operators(p)?;
    let sts = states(n, r);
    let mut weights = Vec::with_capacity(sts.len());
    for s in &sts {
        let word: Vec<_> = s
            .0
            .iter()
            .map(|&x| match x {
                2 => &ops.d,
                1 => &ops.a,
                _ => &ops.e,
            })
            .collect();
        weights.push(eval_bra_word_ket(&word, 0)?);
    }
    let total = weights.iter().fold(F::zero(), |acc, w| acc + w.clone());
    Ok(AnsatzWeights { states: sts, weights, total })
}

/// Matrix Ansatz against the exact stationary solve, plus structural checks
/// of the chain itself.
pub fn verify_stationary<F: Field>(p: &ParamPoint<F>, n: usize, r: usize) -> Result<Report> {
    let mut rep = Report::new();
    let idx = format!("N={n}, r={r}");
    let rates: ChainRates<F> = p.rates().into();
    let chain = build_chain(n, r, &rates)?;
    rep.extend(verify_chain_structure(&chain)?);

    let pi = stationary(&chain)?;
    let w = ansatz_weights(p, n, r)?;
    for (k, (exact, ans)) in pi.probs.iter().zip(w.normalized()?).enumerate() {
        rep.compare("Matrix Ansatz = stationary", format!("{idx}, state={}", chain.states[k]), exact, &ans);
    }
    // Σ weights = ⟨W|A^r|V⟩·Z_{N,r}(1)
    let engine = MomentEngine::new(p)?;
    let z = engine.z_two_species(n, r)?.eval(&F::one()) * engine.a_bracket(r)?;
    rep.compare("sum of weights = <W|A^r|V> Z_{N,r}(1)", idx.clone(), &w.total, &z);

    if r == 0 {
        rep.extend(verify_single_species_match(&chain)?);
    }
    Ok(rep)
}

/// Rows sum to one and every entry agrees with the rule list.
pub fn verify_chain_structure<F: Field>(c: &ChainSpec<F>) -> Result<Report> {
    let mut rep = Report::new();
    let k = c.states.len();
    let expect = crate::exact::binomial(c.n as i64, c.r as i64) as usize * (1usize << (c.n - c.r));
    rep.assert(
        "|B_{N,r}| = C(N,r) 2^{N-r}",
        format!("N={}, r={}", c.n, c.r),
        k == expect,
        k.to_string(),
        expect.to_string(),
    );
    let mut rows_ok = true;
    let mut rules_ok = true;
    let mut first_bad = String::new();
    for i in 0..k {
        let sum = (0..k).fold(F::zero(), |acc, j| acc + c.p[(i, j)].clone());
        rows_ok &= sum == F::one();
        for j in 0..k {
            if i == j {
                continue;
            }
            let want = rule_probability(&c.states[i], &c.states[j], &c.rates)?;
            if want != c.p[(i, j)] {
                rules_ok = false;
                if first_bad.is_empty() {
                    first_bad = format!("{} -> {}", c.states[i], c.states[j]);
                }
            }
        }
    }
    let idx = format!("N={}, r={}", c.n, c.r);
    rep.assert("rows sum to 1", idx.clone(), rows_ok, String::new(), String::new());
    rep.assert("entries match the transition rules", idx, rules_ok, first_bad, String::new());
    Ok(rep)
}

/// The `r = 0` chain equals the single-species chain under 2 ↔ ●, 0 ↔ ○.
fn verify_single_species_match<F: Field>(c: &ChainSpec<F>) -> Result<Report> {
    let mut rep = Report::new();
    let (words, p1) = build_single_species(c.n, &c.rates)?;
    let map: Vec<usize> = words
        .iter()
        .map(|w| c.index[&State(w.iter().map(|&b| if b { 2 } else { 0 }).collect())])
        .collect();
    let same = (0..words.len()).all(|i| (0..words.len()).all(|j| p1[(i, j)] == c.p[(map[i], map[j])]));
    rep.assert("r = 0 chain is the single-species ASEP", format!("N={}", c.n), same, String::new(), String::new());
    Ok(rep)
}

/// Simulation settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub steps: u64,
    pub burnin: u64,
    pub seed: u64,
    /// Keep every `thin`-th post-burn-in state in `thinned_counts`.
    pub thin: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig { steps: 1_000_000, burnin: 10_000, seed: 0, thin: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub states: Vec<State>,
    /// Visits after burn-in, one per step.
    pub counts: Vec<u64>,
    pub thinned_counts: Vec<u64>,
    pub config: SimConfig,
}

impl SimResult {
    pub fn frequencies(&self) -> Vec<f64> {
        let total: u64 = self.counts.iter().sum();
        self.counts.iter().map(|&c| c as f64 / total.max(1) as f64).collect()
    }
}

/// Run the chain with ChaCha8 seeded from `seed`, one uniform per step,
/// starting from the first state in lexicographic order.
pub fn simulate(c: &ChainSpec<Rational>, cfg: SimConfig) -> Result<SimResult> {
    let r = &c.rates;
    for (name, v) in [("alpha", &r.alpha), ("beta", &r.beta), ("gamma", &r.gamma), ("delta", &r.delta), ("q", &r.q), ("u", &r.u)] {
        if v.is_negative() || *v > Rational::one() {
            return Err(Error::precondition(format!("{name} = {v} lies outside [0, 1]")));
        }
    }
    if cfg.thin == 0 {
        return Err(Error::precondition("thin must be ≥ 1"));
    }
    let k = c.states.len();
    // cumulative distribution per row, over the nonzero entries
    let mut table: Vec<Vec<(f64, usize)>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = 0.0;
        let mut row = Vec::new();
        for j in 0..k {
            let v = &c.p[(i, j)];
            if v.is_negative() {
                return Err(Error::precondition(format!("negative probability in row {}", c.states[i])));
            }
            if !v.is_zero() {
                acc += v.to_f64();
                row.push((acc, j));
            }
        }
        table.push(row);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = 0usize;
    let mut counts = vec![0u64; k];
    let mut thinned = vec![0u64; k];
    for step in 0..cfg.burnin + cfg.steps {
        let u: f64 = rng.gen();
        let row = &table[cur];
        // rounding can leave the last cumulative value a hair below 1
        let pos = row.partition_point(|&(cum, _)| cum <= u).min(row.len() - 1);
        cur = row[pos].1;
        if step >= cfg.burnin {
            counts[cur] += 1;
            if (step - cfg.burnin) % cfg.thin == 0 {
                thinned[cur] += 1;
            }
        }
    }
    Ok(SimResult { states: c.states.clone(), counts, thinned_counts: thinned, config: cfg })
}

/// `½ Σ |p̂ - π|`
pub fn total_variation(freq: &[f64], exact: &[Rational]) -> f64 {
    freq.iter().zip(exact).map(|(f, p)| (f - p.to_f64()).abs()).sum::<f64>() / 2.0
}

/// Pearson statistic and degrees of freedom for observed counts against
/// exact probabilities; cells with zero probability are skipped.
pub fn chi_square(counts: &[u64], exact: &[Rational]) -> (f64, usize) {
    let total: u64 = counts.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&c, p) in counts.iter().zip(exact) {
        let e = p.to_f64() * total as f64;
        if e > 0.0 {
            stat += (c as f64 - e).powi(2) / e;
            cells += 1;
        }
    }
    (stat, cells.saturating_sub(1))
}
