//! `macvv` command line.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use macvv::coeffs::Scalar;
use macvv::daha::{self, DahaModule};
use macvv::limits::{self, Tower};
use macvv::pieri;
use macvv::series::{self, DEFAULT_WINDOW_CAP};
use macvv::spherical;
use macvv::tableaux::{self, extended_shape, Filling, FillingKind, Partition, PeriodicTableau};

/// Largest rank accepted without `--unsafe-large` by commands that act with
/// the full Hecke algebra.
const MAX_RANK: usize = 7;
const MAX_LIST_RANK: usize = 10;
const MAX_ORDER: i64 = 16;
const MAX_WINDOW_CAP: usize = 60;

#[derive(Parser)]
#[command(name = "macvv", version, about = "Vector-valued Macdonald polynomials, Pieri rules and q,t-series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Lift the size limits.
    #[arg(long, global = true)]
    unsafe_large: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ryt,
    Rssyt,
}

#[derive(Subcommand)]
enum Command {
    /// Periodic tableaux of a filling, or all fillings of a degree.
    Tableaux(TableauxArgs),
    /// Weight vectors F_tau with their theta-spectrum certificate.
    Weight(WeightArgs),
    /// P_T with its weight expansion and P_{0,l} eigenvalues.
    Macdonald(MacdonaldArgs),
    /// Stability and intertwining of the connecting maps over a rank window.
    Phi(PhiArgs),
    /// Pieri coefficients, formula against the brute-force oracle.
    Pieri(PieriArgs),
    /// Product-sum identity through a given order of t.
    Identity(IdentityArgs),
    /// Defining relations and sampled weight certificates.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct TableauxArgs {
    /// Filling as JSON rows (or a path to a JSON file).
    #[arg(long)]
    filling: Option<String>,
    /// Shape, e.g. `3,1`; with --degree lists fillings of that degree.
    #[arg(long)]
    shape: Option<String>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = Kind::Ryt)]
    kind: Kind,
    /// Also list PSYT(T).
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long)]
    filling: String,
    /// A single periodic tableau as JSON rows of `{"i": .., "b": ..}`.
    #[arg(long)]
    tau: Option<String>,
}

#[derive(Args)]
struct MacdonaldArgs {
    #[arg(long)]
    filling: String,
}

#[derive(Args)]
struct PhiArgs {
    /// Base partition lambda, e.g. `1` or `""` for the empty partition.
    #[arg(long, default_value = "")]
    base: String,
    /// Lower rank of the window; checks Phi from n + 1 to n.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    degree: u32,
}

#[derive(Args)]
struct PieriArgs {
    #[arg(long, default_value = "")]
    base: String,
    #[arg(long)]
    n: Option<usize>,
    /// Source filling on lambda^(n).
    #[arg(long = "T")]
    t: String,
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long, default_value = "")]
    base: String,
    /// Filling on some lambda^(m); a flat list is read as a single row.
    #[arg(long = "T")]
    t: String,
    #[arg(long)]
    order: i64,
    #[arg(long, default_value_t = DEFAULT_WINDOW_CAP)]
    window_cap: usize,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long)]
    shape: String,
    /// Expected rank; must match the shape size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    degree: u32,
    /// Number of sampled weight vectors to certify.
    #[arg(long, default_value_t = 8)]
    samples: usize,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}; pass --unsafe-large to run anyway")]
    TooLarge(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// A report plus whether every check in it passed.
struct Outcome {
    report: Value,
    passed: bool,
    failure: Option<String>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report, passed: true, failure: None }
    }
}

fn read_arg(s: &str) -> Result<String, CliError> {
    let p = Path::new(s);
    if !s.trim_start().starts_with('[') && p.is_file() {
        Ok(std::fs::read_to_string(p)?)
    } else {
        Ok(s.to_string())
    }
}

fn parse_shape(s: &str) -> Result<Partition, CliError> {
    let s = read_arg(s)?;
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts = inner
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(input))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(input)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Rows {
    Many(Vec<Vec<u32>>),
    One(Vec<u32>),
}

fn parse_filling(s: &str) -> Result<Filling, CliError> {
    let rows = match serde_json::from_str::<Rows>(&read_arg(s)?).map_err(input)? {
        Rows::Many(r) => r,
        Rows::One(r) => vec![r],
    };
    Filling::from_rows(rows).map_err(input)
}

fn guard(what: &str, n: usize, max: usize, unsafe_large: bool) -> Result<(), CliError> {
    if n > max && !unsafe_large {
        return Err(CliError::TooLarge(format!("{what} {n} exceeds the limit {max}")));
    }
    Ok(())
}

fn scalar(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn pair_labels(tau: &PeriodicTableau, pairs: &[(tableaux::Cell, tableaux::Cell)]) -> Value {
    pairs.iter().map(|&(a, b)| json!([tau.label(a).to_string(), tau.label(b).to_string()])).collect()
}

fn eigenvalues(tau: &PeriodicTableau) -> Value {
    (1..=tau.n()).map(|i| scalar(&daha::eigenvalue(tau, i))).collect()
}

fn run_tableaux(a: &TableauxArgs, cli: &Cli) -> Result<Outcome, CliError> {
    if let Some(f) = &a.filling {
        let t = parse_filling(f)?;
        let stats = tableaux::stats(&t).map_err(input)?;
        let (min, top) = tableaux::min_top(&t).map_err(input)?;
        let mut report = json!({
            "filling": to_value(&t),
            "shape": to_value(t.shape()),
            "rssyt": t.is_rssyt(),
            "standard": to_value(&stats.standard),
            "nu": stats.nu,
            "b": stats.b,
            "mu": stats.mu,
            "min": to_value(&min),
            "top": to_value(&top),
            "inversions": pair_labels(&min, &tableaux::min_inversions(&t).map_err(input)?),
        });
        if a.list {
            guard("rank", t.shape().size(), MAX_LIST_RANK, cli.unsafe_large)?;
            let all = tableaux::enumerate_psyt(&t).map_err(input)?;
            report["count"] = json!(all.len());
            report["psyt"] = all.iter().map(to_value).collect();
        }
        return Ok(Outcome::ok(report));
    }
    let (Some(shape), Some(d)) = (&a.shape, a.degree) else {
        return Err(CliError::Input("give --filling, or --shape with --degree".into()));
    };
    let shape = parse_shape(shape)?;
    guard("rank", shape.size(), MAX_LIST_RANK, cli.unsafe_large)?;
    let kind = match a.kind {
        Kind::Ryt => FillingKind::Ryt,
        Kind::Rssyt => FillingKind::Rssyt,
    };
    let all = tableaux::enumerate_fillings(&shape, d, kind);
    Ok(Outcome::ok(json!({
        "shape": to_value(&shape),
        "degree": d,
        "count": all.len(),
        "fillings": all.iter().map(to_value).collect::<Value>(),
    })))
}

fn run_weight(a: &WeightArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let t = parse_filling(&a.filling)?;
    guard("rank", t.shape().size(), MAX_RANK, cli.unsafe_large)?;
    let m = DahaModule::new(t.shape());
    let taus = match &a.tau {
        Some(s) => {
            let tau: PeriodicTableau = serde_json::from_str(&read_arg(s)?).map_err(input)?;
            if tau.filling() != t {
                return Err(CliError::Input(format!("{tau} does not have powers {t}")));
            }
            vec![tau]
        }
        None => tableaux::enumerate_psyt(&t).map_err(input)?,
    };
    let mut vectors = Vec::new();
    for tau in &taus {
        match m.build_f(tau) {
            Ok(w) => vectors.push(json!({
                "tableau": to_value(tau),
                "eigenvalues": eigenvalues(tau),
                "terms": to_value(&m.describe(&w.element)),
            })),
            Err(e) => {
                return Ok(Outcome {
                    report: json!({"filling": to_value(&t), "failed": tau.to_string(), "error": e.to_string()}),
                    passed: false,
                    failure: Some(format!("spectrum certificate fails for {tau}: {e}")),
                })
            }
        }
    }
    let triangular = m.triangularity(&t).map_err(input)?;
    Ok(Outcome {
        report: json!({"filling": to_value(&t), "weights": vectors, "triangular": triangular}),
        passed: triangular,
        failure: (!triangular).then(|| format!("F_Top({t}) is not triangular")),
    })
}

fn run_macdonald(a: &MacdonaldArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let t = parse_filling(&a.filling)?;
    guard("rank", t.shape().size(), MAX_RANK, cli.unsafe_large)?;
    let m = DahaModule::new(t.shape());
    let p = spherical::p_formula(&m, &t).map_err(input)?;
    let cleared = daha::clear_denominators(&p.element);
    let mut eig = serde_json::Map::new();
    let mut failure = None;
    for l in [1, 2] {
        let value = spherical::p0l_eigenvalue(&t, l);
        let ok = spherical::act_p0l(&m, l, &cleared) == daha::scale(&cleared, &value);
        if !ok {
            failure = Some(format!("P_0,{l} does not act on P_{t} by {value}"));
        }
        eig.insert(format!("P0{l}"), json!({"value": value.to_string(), "verified": ok}));
    }
    let symmetric = spherical::is_symmetric(&m, &p.element);
    if !symmetric {
        failure = Some(format!("P_{t} is not symmetric"));
    }
    let report = json!({
        "filling": to_value(&t),
        "expansion": to_value(&p.rows()),
        "terms": to_value(&m.describe(&p.element)),
        "eigenvalues": Value::Object(eig),
        "symmetric": symmetric,
        "k": spherical::k_coeff(&t).map_err(input)?.to_string(),
    });
    Ok(Outcome { report, passed: failure.is_none(), failure })
}

fn run_phi(a: &PhiArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let base = parse_shape(&a.base)?;
    if a.n < base.min_rank().max(1) {
        return Err(CliError::Input(format!("n must be at least {}", base.min_rank().max(1))));
    }
    guard("rank", a.n + 1, MAX_RANK, cli.unsafe_large)?;
    let tower = Tower::new(&base);
    let (small, big) = (tower.at(a.n).map_err(input)?, tower.at(a.n + 1).map_err(input)?);
    let mut checked = 0;
    let mut failures = Vec::new();
    for d in 0..=a.degree {
        for t in tableaux::enumerate_fillings(small.shape(), d, FillingKind::Ryt) {
            let ext = t.extend_first_row(1);
            let (_, top) = tableaux::min_top(&t).map_err(input)?;
            let (_, top_ext) = tableaux::min_top(&ext).map_err(input)?;
            let f = big.f_vector(&top_ext).map_err(input)?;
            if tower.phi(a.n, &f).map_err(input)? != *small.f_vector(&top).map_err(input)? {
                failures.push(format!("F_Top {t}"));
            }
            if t.is_rssyt() {
                let p = spherical::p_formula(&big, &ext).map_err(input)?.element;
                let p0 = spherical::p_formula(&small, &t).map_err(input)?.element;
                if tower.phi(a.n, &p).map_err(input)? != p0 {
                    failures.push(format!("P {t}"));
                }
            }
            checked += 1;
        }
    }
    let mut intertwining = Vec::new();
    for l in [1, 2] {
        let r = tower.intertwine_check(a.n, l, a.degree).map_err(input)?;
        if !r.passed() {
            failures.push(format!("intertwining l={l}: {} of {} fail", r.failed, r.checked));
        }
        intertwining.push(to_value(&r));
    }
    let failure = failures.first().cloned();
    Ok(Outcome {
        report: json!({
            "base": to_value(&base),
            "n": a.n,
            "degree": a.degree,
            "fillings_checked": checked,
            "intertwining": intertwining,
            "failures": failures,
        }),
        passed: failure.is_none(),
        failure,
    })
}

fn run_pieri(a: &PieriArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let base = parse_shape(&a.base)?;
    let t = parse_filling(&a.t)?;
    let n = a.n.unwrap_or(t.shape().size());
    let shape = extended_shape(&base, n).map_err(input)?;
    if *t.shape() != shape {
        return Err(CliError::Input(format!("T has shape {}, expected {shape}", t.shape())));
    }
    guard("rank", n, MAX_RANK, cli.unsafe_large)?;
    if a.r > n {
        return Err(CliError::Input(format!("r = {} exceeds n = {n}", a.r)));
    }
    let m = DahaModule::new(&shape);
    let check = pieri::compare_with_oracle(&m, &t, a.r).map_err(input)?;
    let oracle = pieri::bruteforce_expansion(&m, &t, a.r).map_err(input)?;
    let entries: Vec<Value> = check
        .entries
        .iter()
        .map(|e| {
            let o = oracle.iter().find(|(s, _)| *s == e.target).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero);
            json!({
                "target": to_value(&e.target),
                "formula": e.coefficient.to_string(),
                "oracle": o.to_string(),
                "match": o == e.coefficient,
            })
        })
        .collect();
    let passed = check.formula_matches && check.support_in_candidates;
    Ok(Outcome {
        report: json!({
            "base": to_value(&base),
            "n": n,
            "r": a.r,
            "source": to_value(&t),
            "entries": entries,
            "formula_matches": check.formula_matches,
            "support_in_candidates": check.support_in_candidates,
        }),
        passed,
        failure: (!passed).then(|| format!("Pieri formula disagrees with the oracle for T = {t}, r = {}", a.r)),
    })
}

fn run_identity(a: &IdentityArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let base = parse_shape(&a.base)?;
    if a.order > MAX_ORDER && !cli.unsafe_large {
        return Err(CliError::TooLarge(format!("order {} exceeds the limit {MAX_ORDER}", a.order)));
    }
    guard("window cap", a.window_cap, MAX_WINDOW_CAP, cli.unsafe_large)?;
    let t = parse_filling(&a.t)?;
    let om = limits::OmegaFilling::new(&base, &t).map_err(input)?;
    match series::verify_identity(&om, a.order, a.window_cap) {
        Ok(r) => {
            let passed = r.verdict;
            Ok(Outcome {
                report: json!({
                    "T": to_value(&r.filling),
                    "N": r.order,
                    "window": r.window,
                    "certified_at": r.certified_at,
                    "tableaux": r.tableaux,
                    "lowest": r.lowest,
                    "lhs_coeffs": r.lhs,
                    "rhs_coeffs": r.rhs,
                    "verdict": r.verdict,
                }),
                passed,
                failure: (!passed).then(|| format!("identity fails through t^{} for {t}", a.order)),
            })
        }
        Err(e @ series::SeriesError::Inconclusive { .. }) => Ok(Outcome {
            report: json!({"T": to_value(&om), "N": a.order, "verdict": Value::Null, "error": e.to_string()}),
            passed: false,
            failure: Some(e.to_string()),
        }),
        Err(e) => Err(input(e)),
    }
}

fn run_selftest(a: &SelftestArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let shape = parse_shape(&a.shape)?;
    if let Some(n) = a.n {
        if n != shape.size() {
            return Err(CliError::Input(format!("shape {shape} has {} boxes, not {n}", shape.size())));
        }
    }
    guard("rank", shape.size(), MAX_RANK, cli.unsafe_large)?;
    let m = DahaModule::new(&shape);
    let relations = m.relation_suite(a.degree);
    let mut pool = Vec::new();
    for d in 0..=a.degree {
        for t in tableaux::enumerate_fillings(&shape, d, FillingKind::Ryt) {
            pool.extend(tableaux::enumerate_psyt(&t).map_err(input)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let sample: Vec<PeriodicTableau> = pool.choose_multiple(&mut rng, a.samples).cloned().collect();
    let mut failure = relations
        .checks
        .iter()
        .find(|(_, &(_, fail))| fail > 0)
        .map(|(name, &(_, fail))| format!("relation '{name}' fails on {fail} basis vectors"));
    let mut certified = Vec::new();
    for tau in &sample {
        if let Err(e) = m.build_f(tau) {
            failure.get_or_insert(format!("weight vector {tau}: {e}"));
        }
        certified.push(tau.to_string());
    }
    Ok(Outcome {
        report: json!({
            "shape": to_value(&shape),
            "degree": a.degree,
            "seed": cli.seed,
            "relations": relations.checks.iter().map(|(k, &(p, f))| (k.clone(), json!({"pass": p, "fail": f}))).collect::<serde_json::Map<_, _>>(),
            "sampled_weights": certified,
        }),
        passed: failure.is_none(),
        failure,
    })
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("MACVV_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| CliError::Input(format!("MACVV_THREADS={v} is not a number")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(input)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Tableaux(a) => run_tableaux(a, cli),
        Command::Weight(a) => run_weight(a, cli),
        Command::Macdonald(a) => run_macdonald(a, cli),
        Command::Phi(a) => run_phi(a, cli),
        Command::Pieri(a) => run_pieri(a, cli),
        Command::Identity(a) => run_identity(a, cli),
        Command::Selftest(a) => run_selftest(a, cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("macvv: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => render::json(&outcome.report),
        Format::Text => render::text(&outcome.report),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("macvv: {e}");
        return ExitCode::from(2);
    }
    if let Some(f) = &outcome.failure {
        eprintln!("macvv: failed: {f}");
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
