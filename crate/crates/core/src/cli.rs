//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the exit code together with the buffered output,
//! so the binary and the tests share one code path.
//!
//! Exit codes: 0 when every assertion passes, 1 when one fails (the first
//! counterexample goes to stderr), 2 for bad arguments.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{
    full_graded_frobenius_filtered, graded_hook_multiplicity, hook_multiplicity_closed_form,
    kronecker_multiplicity, rosas_hook_kronecker, Partition, MAX_FROBENIUS_N,
};
use crate::coinvariants::{
    dims_table, hilbert_series_with, primed_basis_check_with, QuotientKind, QuotientModel,
};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::exterior::{
    bubble_sort_word, check_enumeration_cap, set_process_enumeration_cap, Monomial, MAX_RANK,
};
use crate::lefschetz::{certify_lefschetz_with, check_boolean_hlp_with};
use crate::paths::{basis_theorem_check_with, enumerate, path_generating, recursion_check, Family};

#[derive(Parser, Debug)]
#[command(
    name = "fermionic",
    version,
    about = "Exact checks on fermionic diagonal coinvariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Bigraded dimension table of a quotient model
    Dims,
    /// Hilbert series of a quotient model
    Hilbert,
    /// Standard monomials against nonnegative paths
    Basis,
    /// Enumerate a path family
    Paths,
    /// Lefschetz certificate for powers of the Casimir element
    Lefschetz,
    /// Graded multiplicities of irreducibles
    Frobenius,
    /// Every check at the given rank
    VerifyAll,
}

#[derive(clap::Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ModelArg::Reflection)]
    pub model: ModelArg,
    #[arg(long, global = true, value_enum, default_value_t = FamilyArg::Nonneg)]
    pub family: FamilyArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Raise or lower the enumeration cap; wins over FERMIONIC_MAX_N
    #[arg(long, global = true)]
    pub max_n_override: Option<usize>,
    /// Also compute dimensions by exact elimination
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Restrict the Frobenius expansion to hooks
    #[arg(long, global = true)]
    pub hooks_only: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelArg {
    Reflection,
    Permutation,
}

impl From<ModelArg> for QuotientKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Reflection => QuotientKind::ReflectionRank,
            ModelArg::Permutation => QuotientKind::Permutation,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    All,
    Nonneg,
    Strict,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::All => Family::All,
            FamilyArg::Nonneg => Family::NonNegative,
            FamilyArg::Strict => Family::StrictlyPositive,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    json: Value,
    plain: String,
    csv: Option<String>,
    failure: Option<String>,
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let config = cli.config.clone();
    set_process_enumeration_cap(config.max_n_override);
    let result = execute(cli.command, &config);
    set_process_enumeration_cap(None);
    match result {
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Ok(report) => {
            let stdout = match config.format {
                Format::Json => format!("{}\n", report.json),
                Format::Plain => report.plain,
                Format::Csv => match report.csv {
                    Some(csv) => csv,
                    None => {
                        return Outcome {
                            code: 2,
                            stdout: String::new(),
                            stderr: "error: csv output is only available for tables\n".into(),
                        }
                    }
                },
            };
            match report.failure {
                None => Outcome {
                    code: 0,
                    stdout,
                    stderr: String::new(),
                },
                Some(f) => Outcome {
                    code: 1,
                    stdout,
                    stderr: format!("counterexample: {f}\n"),
                },
            }
        }
    }
}

fn execute(command: Command, config: &RunConfig) -> Result<Report> {
    let n = config
        .n
        .ok_or_else(|| Error::Parse("--n is required".into()))?;
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    if n > MAX_RANK {
        return Err(Error::RankTooLarge(n));
    }
    let enumerates = match command {
        Command::Dims | Command::Hilbert => config.oracle,
        Command::Basis | Command::Paths | Command::VerifyAll => true,
        Command::Lefschetz | Command::Frobenius => false,
    };
    if enumerates {
        check_enumeration_cap(n, config.max_n_override)?;
    }
    let strategy = Strategy::default();
    match command {
        Command::Dims => dims(n, config, strategy),
        Command::Hilbert => hilbert(n, config, strategy),
        Command::Basis => basis(n, strategy),
        Command::Paths => paths(n, config),
        Command::Lefschetz => lefschetz(n, strategy),
        Command::Frobenius => frobenius(n, config.hooks_only),
        Command::VerifyAll => verify_all(n, config.seed, strategy),
    }
}

fn model_name(kind: QuotientKind) -> &'static str {
    match kind {
        QuotientKind::ReflectionRank => "reflection",
        QuotientKind::Permutation => "permutation",
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn dims(n: usize, config: &RunConfig, strategy: Strategy) -> Result<Report> {
    let model = QuotientModel::new(config.model.into(), n);
    let rows = dims_table(&model, config.oracle, strategy)?;
    let total: u64 = rows.iter().map(|r| r.closed).sum();
    let oracle_total: Option<u64> = config
        .oracle
        .then(|| rows.iter().filter_map(|r| r.oracle).sum());
    let expected = model.closed_form_total();
    let failure = rows
        .iter()
        .find(|r| !r.matched)
        .map(|r| {
            format!(
                "({}, {}): closed {} vs oracle {:?}",
                r.i, r.j, r.closed, r.oracle
            )
        })
        .or_else(|| (total != expected).then(|| format!("total {total} != {expected}")));
    let mut plain = format!("model {} n {}\n", model_name(model.kind()), n);
    let mut csv = String::from("i,j,closed,oracle,match\n");
    for r in &rows {
        let oracle = r.oracle.map_or("-".to_string(), |o| o.to_string());
        let _ = writeln!(
            plain,
            "({}, {})  {}  {}  {}",
            r.i, r.j, r.closed, oracle, r.matched
        );
        let oracle = r.oracle.map_or(String::new(), |o| o.to_string());
        let _ = writeln!(csv, "{},{},{},{},{}", r.i, r.j, r.closed, oracle, r.matched);
    }
    let _ = writeln!(plain, "total {total}");
    Ok(Report {
        json: json!({
            "model": model_name(model.kind()),
            "n": n,
            "rows": rows,
            "total": total,
            "oracle_total": oracle_total,
            "expected_total": expected,
            "pass": failure.is_none(),
        }),
        plain,
        csv: Some(csv),
        failure,
    })
}

fn hilbert(n: usize, config: &RunConfig, strategy: Strategy) -> Result<Report> {
    let model = QuotientModel::new(config.model.into(), n);
    let closed = model.closed_form_hilbert();
    let oracle = if config.oracle {
        Some(hilbert_series_with(&model, strategy)?)
    } else {
        None
    };
    let symmetric = closed.swap_variables() == closed;
    let failure = match &oracle {
        Some(o) if *o != closed => Some(format!("oracle {o} != closed form {closed}")),
        _ if !symmetric => Some(format!("{closed} is not symmetric in q and t")),
        _ => None,
    };
    let mut csv = String::from("q_degree,t_degree,coefficient\n");
    for [a, b, c] in closed.triples() {
        let _ = writeln!(csv, "{a},{b},{c}");
    }
    let mut plain = format!("{closed}\n");
    if let Some(o) = &oracle {
        let _ = writeln!(plain, "oracle {o}");
    }
    Ok(Report {
        json: json!({
            "model": model_name(model.kind()),
            "n": n,
            "series": closed.to_string(),
            "terms": closed.triples(),
            "oracle": oracle.as_ref().map(|o| o.to_string()),
            "symmetric": symmetric,
            "pass": failure.is_none(),
        }),
        plain,
        csv: Some(csv),
        failure,
    })
}

fn basis(n: usize, strategy: Strategy) -> Result<Report> {
    let report = basis_theorem_check_with(n, strategy)?;
    let failure = report.entries.iter().find(|e| !e.pass).map(|e| {
        format!(
            "({}, {}): standard {:?}, expected {} paths",
            e.i, e.j, e.standard, e.expected_count
        )
    });
    let mut plain = String::new();
    for e in &report.entries {
        let _ = writeln!(
            plain,
            "({}, {})  {}  [{}]",
            e.i,
            e.j,
            e.pass,
            e.standard.join("; ")
        );
    }
    let _ = writeln!(plain, "total {}", report.total);
    Ok(Report {
        json: to_json(&report),
        plain,
        csv: None,
        failure,
    })
}

fn paths(n: usize, config: &RunConfig) -> Result<Report> {
    let family: Family = config.family.into();
    let mut rows = Vec::new();
    let mut csv = String::from("steps,theta_degree,xi_degree,depth\n");
    let mut plain = String::new();
    for p in enumerate(n, family) {
        let s = p.statistics();
        let _ = writeln!(csv, "{},{},{},{}", p, s.theta_deg, s.xi_deg, s.depth);
        let _ = writeln!(
            plain,
            "{p}  ({}, {})  depth {}",
            s.theta_deg, s.xi_deg, s.depth
        );
        rows.push(json!({ "steps": p.to_string(), "theta_degree": s.theta_deg, "xi_degree": s.xi_deg, "depth": s.depth }));
    }
    let gf = path_generating(n, family);
    let _ = writeln!(plain, "count {}  generating {}", rows.len(), gf);
    Ok(Report {
        json: json!({
            "n": n,
            "family": format!("{family:?}"),
            "count": rows.len(),
            "generating": gf.to_string(),
            "paths": rows,
            "pass": true,
        }),
        plain,
        csv: Some(csv),
        failure: None,
    })
}

fn lefschetz(n: usize, strategy: Strategy) -> Result<Report> {
    let cert = certify_lefschetz_with(n, strategy)?;
    let b = &cert.block_statistics;
    let failure = cert
        .entries
        .iter()
        .find(|e| !e.pass)
        .map(|e| {
            format!(
                "({}, {}) r={}: rank {} of {}",
                e.i, e.j, e.r, e.rank, e.size
            )
        })
        .or_else(|| {
            (b.off_block_entries + b.mismatched_blocks > 0).then(|| {
                format!(
                    "{} off-block entries, {} mismatched blocks",
                    b.off_block_entries, b.mismatched_blocks
                )
            })
        });
    let mut csv = String::from("i,j,r,size,rank,pass\n");
    for e in &cert.entries {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            e.i, e.j, e.r, e.size, e.rank, e.pass
        );
    }
    let plain = format!(
        "n {} maps {} blocks {} pass {}\n",
        n,
        cert.entries.len(),
        b.blocks,
        cert.pass
    );
    Ok(Report {
        json: to_json(&cert),
        plain,
        csv: Some(csv),
        failure,
    })
}

fn frobenius(n: usize, hooks_only: bool) -> Result<Report> {
    let f = full_graded_frobenius_filtered(n, hooks_only)?;
    let mut failure = None;
    for (p, m) in &f.entries {
        if p.is_hook() {
            let k = p.len() - 1;
            let want = hook_multiplicity_closed_form(n, k)?;
            if *m != want {
                failure.get_or_insert(format!("{p}: {m} != closed form {want}"));
            }
        }
    }
    if let Some(p) = f.third_row_violations().first() {
        failure.get_or_insert(format!("{p} has third part >= 3 but nonzero multiplicity"));
    }
    if !hooks_only {
        let expected = crate::characters::expected_dr_dimension(n) as i64;
        if f.total_dimension() != expected {
            failure.get_or_insert(format!(
                "total dimension {} != {expected}",
                f.total_dimension()
            ));
        }
    }
    let entries: Vec<Value> = f
        .entries
        .iter()
        .map(|(p, m)| json!({ "partition": p.to_string(), "multiplicity": m.to_string(), "terms": m.triples() }))
        .collect();
    let mut plain = String::new();
    for (p, m) in &f.entries {
        let _ = writeln!(plain, "{p}  {m}");
    }
    Ok(Report {
        json: json!({ "n": n, "hooks_only": hooks_only, "entries": entries, "pass": failure.is_none() }),
        plain,
        csv: None,
        failure,
    })
}

#[derive(Clone, Debug, Serialize)]
struct CheckResult {
    name: &'static str,
    pass: bool,
    counterexample: Option<String>,
}

const CHECKS: [&str; 10] = [
    "lefschetz",
    "boolean-hlp",
    "dims-reflection",
    "dims-permutation",
    "basis",
    "primed-basis",
    "recursion",
    "hook-multiplicities",
    "hook-kronecker",
    "sign-oracle",
];

fn first<T>(items: &[T], bad: impl Fn(&T) -> Option<String>) -> Option<String> {
    items.iter().find_map(bad)
}

fn run_check(name: &str, n: usize, seed: u64, strategy: Strategy) -> Result<Option<String>> {
    Ok(match name {
        "lefschetz" => {
            let c = certify_lefschetz_with(n, strategy)?;
            first(&c.entries, |e| {
                (!e.pass).then(|| format!("({}, {}) rank {} of {}", e.i, e.j, e.rank, e.size))
            })
            .or_else(|| (!c.pass).then(|| "block structure differs".to_string()))
        }
        "boolean-hlp" => {
            let r = check_boolean_hlp_with(n, strategy)?;
            first(&r.rows, |row| {
                (!row.pass).then(|| format!("M_{n}({}, {}) rank {}", row.i, n - row.i, row.rank))
            })
        }
        "dims-reflection" | "dims-permutation" => {
            let kind = if name == "dims-reflection" {
                QuotientKind::ReflectionRank
            } else {
                QuotientKind::Permutation
            };
            let rows = dims_table(&QuotientModel::new(kind, n), true, strategy)?;
            first(&rows, |r| {
                (!r.matched).then(|| {
                    format!(
                        "({}, {}) closed {} oracle {:?}",
                        r.i, r.j, r.closed, r.oracle
                    )
                })
            })
        }
        "basis" => {
            let r = basis_theorem_check_with(n, strategy)?;
            first(&r.entries, |e| {
                (!e.pass).then(|| format!("({}, {}) standard {:?}", e.i, e.j, e.standard))
            })
        }
        "primed-basis" => {
            let r = primed_basis_check_with(n, strategy)?;
            first(&r.entries, |e| {
                (!e.independent || e.count != e.quotient_dimension).then(|| {
                    format!(
                        "({}, {}) {} paths, dimension {}",
                        e.i, e.j, e.count, e.quotient_dimension
                    )
                })
            })
            .or_else(|| (!r.pass).then(|| format!("determinant {}", r.transition_determinant)))
        }
        "recursion" => {
            let r = recursion_check(n)?;
            first(&r.entries, |e| {
                (!(e.path_recursion && e.hilbert_recursion)).then(|| format!("step {}", e.m))
            })
        }
        "hook-multiplicities" => {
            let mut bad = None;
            for m in 1..=n.min(MAX_FROBENIUS_N) {
                for k in 0..m {
                    let got = graded_hook_multiplicity(m, k)?;
                    let want = hook_multiplicity_closed_form(m, k)?;
                    if got != want && bad.is_none() {
                        bad = Some(format!("n={m} k={k}: {got} != {want}"));
                    }
                }
            }
            bad
        }
        "hook-kronecker" => hook_kronecker_sweep(n.min(MAX_FROBENIUS_N))?,
        "sign-oracle" => sign_oracle(n, 1000, seed)?,
        other => return Err(Error::Parse(format!("unknown check {other}"))),
    })
}

/// Compares the indicator formula with class sums on its whole valid box
/// for every rank up to `n`.
pub fn hook_kronecker_sweep(n: usize) -> Result<Option<String>> {
    for m in 3..=n {
        for a in 1..m {
            for b in 1..m {
                for c in 1..m - 1 {
                    let formula = rosas_hook_kronecker(m, a, b, c)? as u64;
                    let h = |k| Partition::hook(m, k);
                    let direct = kronecker_multiplicity(&h(a)?, &h(b)?, &h(c)?)?;
                    if formula != direct {
                        return Ok(Some(format!(
                            "n={m} a={a} b={b} c={c}: formula {formula} vs {direct}"
                        )));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `pairs` random monomial products checked against sorting the
/// concatenated words by adjacent swaps.
pub fn sign_oracle(n: usize, pairs: usize, seed: u64) -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full: u32 = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
    for _ in 0..pairs {
        let mut draw = || Monomial::new(n, rng.gen::<u32>() & full, rng.gen::<u32>() & full);
        let (a, b) = (draw()?, draw()?);
        let fast = a.mul_signed(&b);
        let mut word = a.word();
        word.extend(b.word());
        let slow = bubble_sort_word(n, &word)?;
        if fast != slow {
            return Ok(Some(format!("({a})·({b}): {fast:?} vs {slow:?}")));
        }
    }
    Ok(None)
}

fn verify_all(n: usize, seed: u64, strategy: Strategy) -> Result<Report> {
    let results = strategy.map(&CHECKS, |&name| run_check(name, n, seed, strategy));
    let mut checks = Vec::with_capacity(CHECKS.len());
    for (name, r) in CHECKS.iter().zip(results) {
        let counterexample = r?;
        checks.push(CheckResult {
            name,
            pass: counterexample.is_none(),
            counterexample,
        });
    }
    let failure = checks
        .iter()
        .find(|c| !c.pass)
        .map(|c| format!("{}: {}", c.name, c.counterexample.as_deref().unwrap_or("")));
    let mut plain = String::new();
    for c in &checks {
        let _ = writeln!(
            plain,
            "{:<20} {}",
            c.name,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(Report {
        json: json!({ "n": n, "checks": checks, "pass": failure.is_none() }),
        plain,
        csv: None,
        failure,
    })
}
