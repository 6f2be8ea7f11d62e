//! Named verification suites over seeded random points, shared by the CLI
//! and the integration tests.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ansatz::{build_operators, check_ansatz_relations, BandOperator, ParamPoint};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Poly, Rational, Ring};
use crate::f_identities::{verify_section7, Section7Bounds};
use crate::moments::{
    verify_corollary_motzkin, verify_main_theorem, verify_main_theorem_unscaled, MomentEngine, COROLLARY_PRINTED,
    MAIN_THEOREM_EDGE, MAIN_THEOREM_UNSCALED,
};
use crate::motzkin::{k_r, path_gf, verify_kmlgv, KmlgvConfig};
use crate::exact::Domain;
use crate::partition::Partition;
use crate::q1::{c_matrix_q1, positivity_q1, verify_q1_recurrences, Q1Bounds, PROP_RECURRENCE_PRINTED};
use crate::report::Report;
use crate::sampling::{PointOptions, PointSampler};
use crate::words::{verify_finalcheck, verify_main2_aggregate, verify_refinement, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Relations,
    MainTheorem,
    JacobiTrudi,
    Refinement,
    Section7,
    Motzkin,
    Q1,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Relations,
        Suite::MainTheorem,
        Suite::JacobiTrudi,
        Suite::Refinement,
        Suite::Section7,
        Suite::Motzkin,
        Suite::Q1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::MainTheorem => "main-theorem",
            Suite::JacobiTrudi => "jacobi-trudi",
            Suite::Refinement => "refinement",
            Suite::Section7 => "section7",
            Suite::Motzkin => "motzkin",
            Suite::Q1 => "q1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Knobs shared by every suite; `None` means the suite default.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub points: Option<usize>,
    pub seed: u64,
    pub n_max: Option<usize>,
    /// `key=value,...`; the accepted keys depend on the suite.
    pub bounds: Option<String>,
}

impl SuiteConfig {
    fn points(&self, default: usize) -> usize {
        self.points.unwrap_or(default)
    }

    fn n(&self, default: usize) -> usize {
        self.n_max.unwrap_or(default)
    }
}

/// Checks that decide pass/fail, and checks that are only reported.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub seed: u64,
    pub points: Vec<String>,
    pub counted: Report,
    pub informational: Report,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counted.all_hold()
    }
}

fn parse_bounds(s: Option<&str>, allowed: &[&str]) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for kv in s.unwrap_or("").split(',').filter(|t| !t.trim().is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("bound {kv:?} is not key=value")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(Error::Parse(format!("unknown bound {k:?}; expected one of {allowed:?}")));
        }
        let v = v.trim().parse().map_err(|e| Error::Parse(format!("bound {kv:?}: {e}")))?;
        out.insert(k.to_string(), v);
    }
    Ok(out)
}

pub fn describe(p: &ParamPoint<Rational>) -> String {
    format!("a={},b={},c={},d={},q={}", p.a, p.b, p.c, p.d, p.q)
}

/// Tag every check with its point index.
fn tagged(mut rep: Report, k: usize) -> Report {
    for c in &mut rep.checks {
        c.indices = format!("{} @p{k}", c.indices);
    }
    rep
}

/// Run `f` on every point in parallel; results come back in point order.
fn per_point<T: Sync, O: Send>(pts: &[T], f: impl Fn(usize, &T) -> Result<O> + Sync) -> Result<Vec<O>> {
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = pts.iter().enumerate().map(|(k, p)| s.spawn(move || f(k, p))).collect();
        handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
    })
}

fn merge(reps: Vec<Report>) -> Report {
    let mut out = Report::new();
    for r in reps {
        out.extend(r);
    }
    out
}

fn split(rep: Report, informational: &[&str]) -> (Report, Report) {
    let (info, counted): (Vec<_>, Vec<_>) =
        rep.checks.into_iter().partition(|c| informational.contains(&c.identity.as_str()));
    (Report { checks: counted }, Report { checks: info })
}

fn kmlgv_configs(n_max: usize, r_max: usize) -> Vec<KmlgvConfig> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        out.push(KmlgvConfig::Denominator { r });
        for n in r..=n_max {
            out.push(KmlgvConfig::Numerator { n, r });
        }
    }
    out
}

/// Brute-force path sums against entries of truncated matrix powers.
pub fn motzkin_oracle<R: Ring + fmt::Display>(c: &BandOperator<R>, n_max: usize, label: &str) -> Result<Report> {
    let mut rep = Report::new();
    // heights never exceed N, so one extra row keeps the truncation exact
    let dim = n_max + 2;
    let m = c.truncate(dim)?;
    let mut power = Matrix::identity(dim);
    for n in 0..=n_max {
        for r in 0..=n {
            rep.compare("path sum = truncated power", format!("{label}, N={n}, r={r}"), &path_gf(c, n, r)?, &power[(0, r)]);
        }
        power = power.mul(&m);
    }
    Ok(rep)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut sampler = PointSampler::new(cfg.seed);
    let mut points: Vec<String>;
    let info: &[&str];
    let full = match suite {
        Suite::Relations => {
            let dim = parse_bounds(cfg.bounds.as_deref(), &["dim"])?.get("dim").copied().unwrap_or(10);
            let opts = PointOptions { nonzero_q: true, a_bracket_max: 0 };
            let pts = (0..cfg.points(5)).map(|_| sampler.param_point(opts)).collect::<Result<Vec<_>>>()?;
            points = pts.iter().map(describe).collect();
            info = &[];
            merge(per_point(&pts, |k, p| Ok(tagged(check_ansatz_relations(&build_operators(p)?, dim)?, k)))?)
        }
        Suite::MainTheorem => {
            let n_max = cfg.n(6);
            let opts = PointOptions { nonzero_q: true, a_bracket_max: n_max };
            let pts = (0..cfg.points(3)).map(|_| sampler.param_point(opts)).collect::<Result<Vec<_>>>()?;
            points = pts.iter().map(describe).collect();
            info = &[MAIN_THEOREM_EDGE, MAIN_THEOREM_UNSCALED];
            merge(per_point(&pts, |k, p| {
                let engine = MomentEngine::new(p)?;
                let mut rep = Report::new();
                for n in 1..=n_max {
                    for r in 1..=n {
                        rep.extend(verify_main_theorem(&engine, n, r)?);
                        rep.extend(verify_main_theorem_unscaled(&engine, n, r)?);
                    }
                }
                Ok(tagged(rep, k))
            })?)
        }
        Suite::JacobiTrudi => {
            let b = parse_bounds(cfg.bounds.as_deref(), &["part", "len"])?;
            let (part, len) = (b.get("part").copied().unwrap_or(4), b.get("len").copied().unwrap_or(3));
            let opts = PointOptions { nonzero_q: true, a_bracket_max: 0 };
            let pts = (0..cfg.points(3)).map(|_| sampler.param_point(opts)).collect::<Result<Vec<_>>>()?;
            points = pts.iter().map(describe).collect();
            info = &[];
            merge(per_point(&pts, |k, p| {
                let engine = MomentEngine::new(p)?;
                let mut rep = Report::new();
                for l in 1..=len {
                    for lam in Partition::in_box(part, l) {
                        rep.compare("Jacobi-Trudi", lam.to_string(), &engine.k(&lam)?, &engine.jacobi_trudi_k(&lam)?);
                    }
                }
                Ok(tagged(rep, k))
            })?)
        }
        Suite::Refinement => {
            let n_max = cfg.n(5);
            let b = parse_bounds(cfg.bounds.as_deref(), &["random", "aggregate"])?;
            let n_random = b.get("random").copied().unwrap_or(20);
            let agg = b.get("aggregate").copied().unwrap_or(4);
            let opts = PointOptions { nonzero_q: true, a_bracket_max: n_max + 2 };
            let pts = (0..cfg.points(1)).map(|_| sampler.param_point(opts)).collect::<Result<Vec<_>>>()?;
            points = pts.iter().map(describe).collect();
            info = &[];
            let mut word_rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
            let random_words: Vec<(Word, usize)> = (0..n_random)
                .map(|_| {
                    let n = word_rng.gen_range(n_max + 1..=n_max + 2);
                    let w = Word((0..n).map(|_| if word_rng.gen::<bool>() { Letter::D } else { Letter::E }).collect());
                    let r = word_rng.gen_range(0..=n);
                    (w, r)
                })
                .collect();
            merge(per_point(&pts, |k, p| {
                let engine = MomentEngine::new(p)?;
                let ops = engine.operators();
                let mut rep = Report::new();
                for n in 0..=n_max {
                    for x in Word::all_de(n) {
                        for r in 0..=n {
                            rep.extend(verify_refinement(ops, &x, r)?);
                        }
                    }
                }
                for (w, r) in &random_words {
                    rep.extend(verify_refinement(ops, w, *r)?);
                }
                for n in 0..=n_max + 1 {
                    for r in 0..=n {
                        rep.extend(verify_finalcheck(ops, n, r)?);
                    }
                }
                for n in 0..=agg {
                    for r in 0..=n {
                        rep.extend(verify_main2_aggregate(&engine, n, r)?);
                    }
                }
                Ok(tagged(rep, k))
            })?)
        }
        Suite::Section7 => {
            let bounds: Section7Bounds = cfg.bounds.as_deref().unwrap_or("").parse()?;
            let opts = PointOptions { nonzero_q: true, a_bracket_max: bounds.r_max.max(bounds.n_max) };
            let pts = (0..cfg.points(3)).map(|_| sampler.param_point(opts)).collect::<Result<Vec<_>>>()?;
            points = pts.iter().map(describe).collect();
            info = &[];
            merge(per_point(&pts, |k, p| Ok(tagged(verify_section7(&build_operators(p)?, bounds)?, k)))?)
        }
        Suite::Motzkin => {
            let n_max = cfg.n(8);
            let b = parse_bounds(cfg.bounds.as_deref(), &["det", "kmlgv_n", "kmlgv_r"])?;
            let det_n = b.get("det").copied().unwrap_or(6);
            let (kn, kr) = (b.get("kmlgv_n").copied().unwrap_or(5), b.get("kmlgv_r").copied().unwrap_or(3));
            let opts = PointOptions { nonzero_q: true, a_bracket_max: 0 };
            let pts = (0..cfg.points(2)).map(|_| sampler.param_point(opts)).collect::<Result<Vec<_>>>()?;
            let q1p = sampler.q1_params()?;
            points = pts.iter().map(describe).collect();
            points.push(format!("alpha={},beta={},gamma={},delta={}", q1p.alpha, q1p.beta, q1p.gamma, q1p.delta));
            info = &[COROLLARY_PRINTED, "prod c_{i,i+1} (1-q)^r = prod(xi - q^i ac)"];
            let mut rep = Report::new();
            let unit = BandOperator::tridiagonal(|_| Ok(Rational::one()), |_| Ok(Rational::one()), |_| Ok(Rational::one()));
            rep.extend(motzkin_oracle(&unit, n_max, "unit weights")?);
            let cq1 = c_matrix_q1(&q1p);
            rep.extend(motzkin_oracle(&cq1, n_max, "q=1 matrix")?);
            for config in kmlgv_configs(kn, kr) {
                rep.extend(verify_kmlgv(&cq1, config)?);
            }
            let per = per_point(&pts, |k, p| {
                let engine = MomentEngine::new(p)?;
                let xi = engine.xi_operator();
                let mut rep = motzkin_oracle(xi, n_max, "xi D + E")?;
                for n in 0..=det_n {
                    for r in 0..=n {
                        // partial paths by enumeration, K from transfer-matrix moments
                        let lhs = path_gf(xi, n, r)?.exact_div(&k_r(xi, r)?)?;
                        rep.compare("det-Motzkin", format!("N={n}, r={r}"), &lhs, &engine.k(&Partition::hook_row(n - r, r))?);
                        rep.extend(verify_corollary_motzkin(&engine, n, r)?.report);
                    }
                }
                // KMLGV on a scalar specialization of the same operator
                let third = Rational::new(1, 3);
                let scalar = xi.map(move |c: Poly<Rational>| c.eval(&third));
                for config in kmlgv_configs(kn, kr) {
                    rep.extend(verify_kmlgv(&scalar, config)?);
                }
                Ok(tagged(rep, k))
            })?;
            rep.extend(merge(per));
            rep
        }
        Suite::Q1 => {
            let b = parse_bounds(cfg.bounds.as_deref(), &["part", "len", "N", "pos"])?;
            let bounds = Q1Bounds {
                max_part: b.get("part").copied().unwrap_or(4),
                max_len: b.get("len").copied().unwrap_or(4),
                n_max: b.get("N").copied().unwrap_or(6),
            };
            let pos = b.get("pos").copied().unwrap_or(3);
            let pts = (0..cfg.points(3).max(1)).map(|_| sampler.q1_params()).collect::<Result<Vec<_>>>()?;
            points = pts
                .iter()
                .map(|p| format!("alpha={},beta={},gamma={},delta={}", p.alpha, p.beta, p.gamma, p.delta))
                .collect();
            info = &[PROP_RECURRENCE_PRINTED];
            let mut rep = merge(per_point(&pts, |k, p| Ok(tagged(verify_q1_recurrences(p, bounds)?, k)))?);
            rep.extend(positivity_q1(pos, pos, &pts[0])?);
            rep
        }
    };
    let (counted, informational) = split(full, info);
    Ok(SuiteOutcome { suite, seed: cfg.seed, points, counted, informational })
}

/// Every suite in order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteOutcome>> {
    Suite::ALL.into_iter().map(|s| run_suite(s, cfg)).collect()
}
