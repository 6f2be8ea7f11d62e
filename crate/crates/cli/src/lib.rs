//! Argument handling and output formatting for the `asep-moments` binary.
//!
//! Exit codes: 0 success or all checks pass, 1 verification failure,
//! 2 usage or parse error, 3 degenerate parameters.

use std::collections::BTreeMap;
use std::io::Write;

use asep_moments::ansatz::{invert_rates, ParamPoint};
use asep_moments::chains::{
    ansatz_weights, build_chain, chi_square, simulate, stationary, total_variation, ChainRates, SimConfig,
};
use asep_moments::exact::{Field, Poly, Rational, Ring};
use asep_moments::moments::{MomentEngine, MAIN_THEOREM};
use asep_moments::q1::{k_det_q1, k_hook, Q1Params};
use asep_moments::report::Check;
use asep_moments::suites::{run_all, run_suite, Suite, SuiteConfig, SuiteOutcome};
use asep_moments::{Error, Partition};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "asep-moments", version, about = "Exact ASEP partition functions and Koornwinder moments")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    /// Representation parameters, e.g. `a=1/2,b=1/3,c=1/5,d=1/7,q=1/4`.
    #[arg(long, conflicts_with = "rates")]
    params: Option<String>,
    /// Rates, e.g. `alpha=1/2,beta=1/3,gamma=1/8,delta=1/9,q=1/4[,u=1]`.
    #[arg(long)]
    rates: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fugacity partition function Z_N(xi).
    Zn {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "N")]
        n: usize,
        /// A rational value or `symbolic`.
        #[arg(long)]
        xi: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Two-species partition function Z_{N,r}(xi).
    Z2 {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Koornwinder moment K_lambda(xi), by partition or as (N-r, 0^r).
    Koornwinder {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long = "N", requires = "r", conflicts_with = "partition")]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Hook-length formula at q = xi = 1.
    Hook {
        #[arg(long)]
        rates: String,
        #[arg(long)]
        partition: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Exact stationary distribution of the two-species chain.
    Stationary {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Matrix-product weights of every configuration.
    AnsatzWeights {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Monte Carlo run of the chain against its exact stationary law.
    Simulate {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = 10_000)]
        burnin: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run a verification suite at seeded random points.
    Verify {
        /// relations | main-theorem | jacobi-trudi | refinement | section7 | motzkin | q1 | all
        suite: String,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Suite-specific `key=value,...` bounds.
        #[arg(long)]
        bounds: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// Result of a command before rendering.
enum Output {
    Json(Value),
    Rows(Vec<String>, Vec<Vec<String>>),
    Suites(Vec<SuiteOutcome>),
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Degenerate(_) | Error::Singular(_) => EXIT_DEGENERATE,
        Error::Parse(_) | Error::Precondition(_) | Error::OverCap { .. } | Error::HorizonExceeded { .. } => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn parse_kv(s: &str, allowed: &[&str]) -> asep_moments::Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for kv in s.split(',').filter(|t| !t.trim().is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("{kv:?} is not key=value")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(Error::Parse(format!("unknown key {k:?}; expected {allowed:?}")));
        }
        out.insert(k.to_string(), v.trim().parse()?);
    }
    Ok(out)
}

fn take(m: &mut BTreeMap<String, Rational>, k: &str) -> asep_moments::Result<Rational> {
    m.remove(k).ok_or_else(|| Error::Parse(format!("missing {k}")))
}

fn param_point(p: &ParamArgs) -> asep_moments::Result<ParamPoint<Rational>> {
    match (&p.params, &p.rates) {
        (Some(s), None) => {
            let mut m = parse_kv(s, &["a", "b", "c", "d", "q"])?;
            let (a, b, c, d, q) = (take(&mut m, "a")?, take(&mut m, "b")?, take(&mut m, "c")?, take(&mut m, "d")?, take(&mut m, "q")?);
            ParamPoint::new(a, b, c, d, q)
        }
        (None, Some(_)) => {
            let r = chain_rates(p)?;
            if !r.u.is_one() {
                return Err(Error::precondition("the matrix representation needs u = 1"));
            }
            let not_rational = || Error::precondition("rates have no rational (a,b,c,d); pass --params instead");
            let (a, c) = invert_rates(&r.alpha, &r.gamma, &r.q)?.ok_or_else(not_rational)?;
            let (b, d) = invert_rates(&r.beta, &r.delta, &r.q)?.ok_or_else(not_rational)?;
            let pt = ParamPoint::new(a, b, c, d, r.q.clone())?;
            if pt.rates() != r.clone().into_rates() {
                return Err(not_rational());
            }
            Ok(pt)
        }
        _ => Err(Error::Parse("pass exactly one of --params or --rates".into())),
    }
}

trait IntoRates {
    fn into_rates(self) -> asep_moments::ansatz::Rates<Rational>;
}

impl IntoRates for ChainRates<Rational> {
    fn into_rates(self) -> asep_moments::ansatz::Rates<Rational> {
        asep_moments::ansatz::Rates { alpha: self.alpha, beta: self.beta, gamma: self.gamma, delta: self.delta, q: self.q }
    }
}

fn chain_rates(p: &ParamArgs) -> asep_moments::Result<ChainRates<Rational>> {
    match (&p.params, &p.rates) {
        (Some(_), None) => Ok(param_point(p)?.rates().into()),
        (None, Some(s)) => {
            let mut m = parse_kv(s, &["alpha", "beta", "gamma", "delta", "q", "u"])?;
            Ok(ChainRates {
                alpha: take(&mut m, "alpha")?,
                beta: take(&mut m, "beta")?,
                gamma: take(&mut m, "gamma")?,
                delta: take(&mut m, "delta")?,
                q: take(&mut m, "q")?,
                u: m.remove("u").unwrap_or_else(Rational::one),
            })
        }
        _ => Err(Error::Parse("pass exactly one of --params or --rates".into())),
    }
}

/// `None` means keep ξ symbolic.
fn parse_xi(xi: &Option<String>) -> asep_moments::Result<Option<Rational>> {
    match xi.as_deref() {
        None | Some("symbolic") => Ok(None),
        Some(s) => Ok(Some(s.parse()?)),
    }
}

fn poly_json(p: &Poly<Rational>, xi: &Option<Rational>) -> Value {
    match xi {
        Some(x) => json!(p.eval(x).to_string()),
        None => json!({ "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>() }),
    }
}

fn execute(cmd: &Command) -> asep_moments::Result<Output> {
    Ok(match cmd {
        Command::Zn { p, n, xi, .. } => {
            let xi = parse_xi(xi)?;
            let engine = MomentEngine::new(&param_point(p)?)?;
            Output::Json(json!({ "Z": poly_json(&engine.z(*n)?, &xi) }))
        }
        Command::Z2 { p, n, r, xi, .. } => {
            if r > n {
                return Err(Error::precondition("need r ≤ N"));
            }
            let xi = parse_xi(xi)?;
            let engine = MomentEngine::new(&param_point(p)?)?;
            Output::Json(json!({ "Z": poly_json(&engine.z_two_species(*n, *r)?, &xi) }))
        }
        Command::Koornwinder { p, partition, n, r, xi, .. } => {
            let xi = parse_xi(xi)?;
            let pt = param_point(p)?;
            let engine = MomentEngine::new(&pt)?;
            let (k, identity, rhs) = match (partition, n, r) {
                (Some(s), None, _) => {
                    let lam: Partition = s.parse()?;
                    (engine.k(&lam)?, "Jacobi-Trudi", engine.jacobi_trudi_k(&lam)?)
                }
                (None, Some(n), Some(r)) if r <= n => {
                    let k = engine.k(&Partition::hook_row(n - r, *r))?;
                    let scale = (Rational::one() - pt.q.clone()).pow(*r as u32).inv()?;
                    (k, MAIN_THEOREM, engine.z_two_species(*n, *r)?.scale(&scale))
                }
                _ => return Err(Error::Parse("pass --partition, or --N and --r with r ≤ N".into())),
            };
            Output::Json(json!({
                "K": poly_json(&k, &xi),
                "check": {
                    "identity": identity,
                    "holds": k == rhs,
                    "lhs": poly_json(&k, &xi),
                    "rhs": poly_json(&rhs, &xi),
                }
            }))
        }
        Command::Hook { rates, partition, .. } => {
            let mut m = parse_kv(rates, &["alpha", "beta", "gamma", "delta", "q", "u"])?;
            for key in ["q", "u"] {
                if let Some(v) = m.remove(key) {
                    if !v.is_one() {
                        return Err(Error::precondition(format!("hook needs {key} = 1, got {v}")));
                    }
                }
            }
            let p = Q1Params::new(take(&mut m, "alpha")?, take(&mut m, "beta")?, take(&mut m, "gamma")?, take(&mut m, "delta")?)?;
            let lam: Partition = partition.parse()?;
            let k = k_hook(&p, &lam)?;
            let det = k_det_q1(&p, &lam)?;
            Output::Json(json!({
                "K": k.to_string(),
                "matches_det": k == det,
                "S": p.s().to_string(),
                "x": p.x().to_string(),
            }))
        }
        Command::Stationary { p, n, r, .. } => {
            let chain = build_chain(*n, *r, &chain_rates(p)?)?;
            let pi = stationary(&chain)?;
            Output::Rows(
                vec!["state".into(), "probability".into()],
                pi.states.iter().zip(&pi.probs).map(|(s, v)| vec![s.to_string(), v.to_string()]).collect(),
            )
        }
        Command::AnsatzWeights { p, n, r, .. } => {
            let w = ansatz_weights(&param_point(p)?, *n, *r)?;
            let normalized = w.normalized()?;
            Output::Rows(
                vec!["state".into(), "weight".into(), "normalized".into()],
                w.states
                    .iter()
                    .zip(&w.weights)
                    .zip(&normalized)
                    .map(|((s, v), nv)| vec![s.to_string(), v.to_string(), nv.to_string()])
                    .collect(),
            )
        }
        Command::Simulate { p, n, r, steps, burnin, seed, .. } => {
            let chain = build_chain(*n, *r, &chain_rates(p)?)?;
            let cfg = SimConfig { steps: *steps, burnin: *burnin, seed: *seed, ..SimConfig::default() };
            let sim = simulate(&chain, cfg)?;
            let exact = stationary(&chain)?;
            let freq = sim.frequencies();
            let (stat, dof) = chi_square(&sim.thinned_counts, &exact.probs);
            let freqs: serde_json::Map<String, Value> =
                sim.states.iter().zip(&freq).map(|(s, f)| (s.to_string(), json!(f))).collect();
            Output::Json(json!({
                "seed": seed,
                "steps": steps,
                "burnin": burnin,
                "frequencies": freqs,
                "total_variation": total_variation(&freq, &exact.probs),
                "chi_square": { "statistic": stat, "dof": dof, "thin": cfg.thin },
            }))
        }
        Command::Verify { suite, n, points, seed, bounds, .. } => {
            let cfg = SuiteConfig { points: *points, seed: *seed, n_max: *n, bounds: bounds.clone() };
            Output::Suites(if suite == "all" { run_all(&cfg)? } else { vec![run_suite(suite.parse::<Suite>()?, &cfg)?] })
        }
    })
}

fn format_of(cmd: &Command) -> Option<Format> {
    match cmd {
        Command::Zn { format, .. }
        | Command::Z2 { format, .. }
        | Command::Koornwinder { format, .. }
        | Command::Hook { format, .. }
        | Command::Stationary { format, .. }
        | Command::AnsatzWeights { format, .. }
        | Command::Simulate { format, .. }
        | Command::Verify { format, .. } => *format,
    }
}

fn check_row(suite: Suite, counted: bool, c: &Check) -> Vec<String> {
    vec![
        suite.to_string(),
        c.identity.clone(),
        c.indices.clone(),
        counted.to_string(),
        c.holds.to_string(),
        c.lhs.clone(),
        c.rhs.clone(),
    ]
}

fn write_csv(out: &mut dyn Write, header: &[String], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

fn render(out: &mut dyn Write, output: &Output, format: Option<Format>) -> std::io::Result<i32> {
    match output {
        Output::Json(v) => {
            match format.unwrap_or(Format::Json) {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = match v.as_object() {
                        Some(m) => m.iter().map(|(k, v)| vec![k.clone(), v.to_string()]).collect(),
                        None => vec![vec![String::new(), v.to_string()]],
                    };
                    write_csv(out, &["key".into(), "value".into()], &rows)?;
                }
                _ => writeln!(out, "{v}")?,
            }
            Ok(EXIT_PASS)
        }
        Output::Rows(header, rows) => {
            match format.unwrap_or(Format::Json) {
                Format::Csv => write_csv(out, header, rows)?,
                Format::Table => {
                    for r in rows {
                        writeln!(out, "{}", r.join("\t"))?;
                    }
                }
                Format::Json => {
                    // one map per value column, keyed by state
                    let v = if header.len() == 2 {
                        let m: serde_json::Map<String, Value> = rows.iter().map(|r| (r[0].clone(), json!(r[1]))).collect();
                        Value::Object(m)
                    } else {
                        let mut obj = serde_json::Map::new();
                        for (col, name) in header.iter().enumerate().skip(1) {
                            let m: serde_json::Map<String, Value> = rows.iter().map(|r| (r[0].clone(), json!(r[col]))).collect();
                            obj.insert(name.clone(), Value::Object(m));
                        }
                        Value::Object(obj)
                    };
                    writeln!(out, "{v}")?;
                }
            }
            Ok(EXIT_PASS)
        }
        Output::Suites(outcomes) => {
            let passed = outcomes.iter().all(SuiteOutcome::passed);
            match format.unwrap_or(Format::Table) {
                Format::Json => writeln!(out, "{}", serde_json::to_string(outcomes).expect("serializable"))?,
                Format::Csv => {
                    let header: Vec<String> =
                        ["suite", "identity", "indices", "counted", "holds", "lhs", "rhs"].map(String::from).to_vec();
                    let mut rows = Vec::new();
                    for o in outcomes {
                        rows.extend(o.counted.checks.iter().map(|c| check_row(o.suite, true, c)));
                        rows.extend(o.informational.checks.iter().map(|c| check_row(o.suite, false, c)));
                    }
                    write_csv(out, &header, &rows)?;
                }
                Format::Table => {
                    for o in outcomes {
                        writeln!(out, "== {} (seed {})", o.suite, o.seed)?;
                        for (k, p) in o.points.iter().enumerate() {
                            writeln!(out, "   p{k}: {p}")?;
                        }
                        for c in &o.counted.checks {
                            writeln!(out, "{} {} [{}]", if c.holds { "pass" } else { "FAIL" }, c.identity, c.indices)?;
                        }
                        if !o.informational.is_empty() {
                            writeln!(out, "-- reported only")?;
                            for c in &o.informational.checks {
                                writeln!(out, "{} {} [{}]", if c.holds { "pass" } else { "FAIL" }, c.identity, c.indices)?;
                            }
                        }
                        let ok = o.counted.checks.iter().filter(|c| c.holds).count();
                        writeln!(
                            out,
                            "{}: {ok}/{} checks pass{}",
                            o.suite,
                            o.counted.len(),
                            if o.passed() { "" } else { " -- FAILED" }
                        )?;
                    }
                }
            }
            Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

/// Parse `argv` (including the program name), run, and write to `out` and
/// `err`. Returns the process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli.cmd) {
        Ok(output) => match render(out, &output, format_of(&cli.cmd)) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_FAIL
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
