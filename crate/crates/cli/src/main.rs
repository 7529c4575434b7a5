use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hdepth::json::{
    couple_json, decomposition_json, depth_report_json, general_verdict_json, pd_json,
    semigroup_json, series_doc_json, SeriesDoc,
};
use hdepth::star::check_star_series_general;
use hdepth::{couples, decompose, hilbert_depth, pd, Error, Input, PdResult, SemigroupPair};

mod selftest;

/// Hilbert depth of graded modules over F[X, Y] with weighted variables.
#[derive(Parser)]
#[command(name = "hdepth", version)]
struct Cli {
    /// Exit with status 1 when the verdict of `check` or `depth` is negative.
    #[arg(long, global = true)]
    quiet_status: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaps, conductor, genus and Apéry sets of the semigroup <A, B>.
    Semigroup { a: i64, b: i64 },
    /// Enumerate or count the fundamental couples of <A, B>.
    Couples {
        a: i64,
        b: i64,
        /// Print only the number of couples.
        #[arg(long)]
        count: bool,
        /// Stop after N couples.
        #[arg(long, value_name = "N")]
        limit: Option<usize>,
        /// One JSON object per line.
        #[arg(long)]
        jsonl: bool,
    },
    /// Decide condition (★) for a series file (`-` reads stdin).
    Check { file: PathBuf },
    /// Hilbert depth with its certificate.
    Depth { file: PathBuf },
    /// Decompose into atoms with nonempty denominators.
    Decompose {
        file: PathBuf,
        /// Also write the atoms as a series document.
        #[arg(short, value_name = "OUT")]
        o: Option<PathBuf>,
    },
    /// Largest r with (1 − t^D)^r · H nonnegative (D defaults to A·B).
    Pd {
        file: PathBuf,
        #[arg(long)]
        d: Option<i64>,
    },
    /// Run the brute-force cross-checks.
    Selftest {
        /// Smaller instance sizes.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// A failure with its exit status.
struct Failure {
    status: u8,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if matches!(e, Error::InvariantBroken(_)) {
            3
        } else {
            2
        };
        let mut body = json!({"error": e.to_string(), "kind": error_kind(&e)});
        if let Error::StarFails(v) = &e {
            body["violation"] = hdepth::json::violation_json(v);
        }
        Failure { status, body }
    }
}

fn input_failure(msg: impl Into<String>) -> Failure {
    Failure {
        status: 2,
        body: json!({"error": msg.into(), "kind": "input"}),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NonPositiveWeight | Error::NonPositive(_) => "non_positive",
        Error::NonCoprime(_) => "non_coprime",
        Error::Equal => "equal_weights",
        Error::WeightOverflow | Error::TooLarge(_) => "too_large",
        Error::BadModulus(_) | Error::BadResidue { .. } => "bad_argument",
        Error::NotAGap(_) | Error::NotAChain(_) => "bad_argument",
        Error::MismatchedPair | Error::UnsupportedDenominator => "unsupported",
        Error::DimensionTooHigh => "dimension_too_high",
        Error::NotNonnegative => "not_nonnegative",
        Error::StarFails(_) => "star_fails",
        Error::InvariantBroken(_) => "invariant_broken",
        Error::NotFound => "not_found",
        Error::BudgetExceeded => "budget_exceeded",
        Error::NonPositiveCoefficient => "non_positive_coefficient",
        Error::Schema(_) => "schema",
    }
}

fn read_doc(path: &Path) -> Result<SeriesDoc, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_failure(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(SeriesDoc::parse(&text)?)
}

fn coprime_pair(a: i64, b: i64, command: &str) -> Result<SemigroupPair, Failure> {
    SemigroupPair::new(a, b).map_err(|e| {
        let mut f = Failure::from(e.clone());
        if let Error::NonCoprime(_) = e {
            f.body["error"] = json!(format!(
                "{e}; `{command}` needs coprime weights (only check and depth reduce by the gcd)"
            ));
        }
        f
    })
}

fn coprime_input(doc: &SeriesDoc, command: &str) -> Result<(SemigroupPair, Input), Failure> {
    coprime_pair(doc.d1, doc.d2, command)?;
    Ok(doc.input()?)
}

/// What a command produced: a JSON document and, for verdict commands, the
/// verdict used by `--quiet-status`.
struct Outcome {
    body: Option<Value>,
    verdict: Option<bool>,
    status: u8,
}

impl Outcome {
    fn value(body: Value) -> Self {
        Self {
            body: Some(body),
            verdict: None,
            status: 0,
        }
    }

    fn verdict(body: Value, positive: bool) -> Self {
        Self {
            body: Some(body),
            verdict: Some(positive),
            status: 0,
        }
    }
}

fn run(cmd: Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Semigroup { a, b } => Ok(Outcome::value(semigroup_json(&coprime_pair(
            a,
            b,
            "semigroup",
        )?))),
        Command::Couples {
            a,
            b,
            count,
            limit,
            jsonl,
        } => {
            let pair = coprime_pair(a, b, "couples")?;
            if count {
                let n = couples::count(&pair);
                let n = hdepth::json::big_to_json(&n.into());
                return Ok(Outcome::value(json!({"count": n})));
            }
            let iter = couples::iter(&pair).take(limit.unwrap_or(usize::MAX));
            if jsonl {
                let stdout = io::stdout();
                let mut out = BufWriter::new(stdout.lock());
                for c in iter {
                    writeln!(out, "{}", couple_json(&c))
                        .map_err(|e| input_failure(e.to_string()))?;
                }
                out.flush().map_err(|e| input_failure(e.to_string()))?;
                return Ok(Outcome {
                    body: None,
                    verdict: None,
                    status: 0,
                });
            }
            let list: Vec<Value> = iter.map(|c| couple_json(&c)).collect();
            Ok(Outcome::value(json!({
                "alpha": pair.alpha(),
                "beta": pair.beta(),
                "count": list.len(),
                "couples": list,
            })))
        }
        Command::Check { file } => {
            let doc = read_doc(&file)?;
            let (h, delta) = doc.general_series()?;
            let verdict = check_star_series_general(&h, delta)?;
            Ok(Outcome::verdict(
                general_verdict_json(&verdict),
                verdict.holds(),
            ))
        }
        Command::Depth { file } => {
            let doc = read_doc(&file)?;
            let (h, delta) = doc.general_series()?;
            if delta == 1 {
                let (pair, input) = doc.input()?;
                let report = hilbert_depth(&pair, &input)?;
                return Ok(Outcome::verdict(
                    depth_report_json(&report),
                    report.hdep > 0,
                ));
            }
            let pair = *h.pair();
            let mut reports = Vec::new();
            for k in 0..delta {
                let slice = h.veronese(delta, k)?;
                reports.push(hilbert_depth(&pair, &Input::Series(slice))?);
            }
            let hdep = reports.iter().map(|r| r.hdep).min().unwrap();
            let slices: Vec<Value> = reports
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let mut v = depth_report_json(r);
                    v["residue"] = json!(k);
                    v
                })
                .collect();
            let body = json!({
                "hdep": hdep,
                "nu": hdep,
                "delta": delta,
                "alpha": pair.alpha(),
                "beta": pair.beta(),
                "slices": slices,
            });
            Ok(Outcome::verdict(body, hdep > 0))
        }
        Command::Decompose { file, o } => {
            let doc = read_doc(&file)?;
            let (pair, input) = coprime_input(&doc, "decompose")?;
            let d = decompose(&pair, &input)?;
            if let Some(path) = o {
                let text = serde_json::to_string_pretty(&series_doc_json(&pair, &d.terms)).unwrap();
                fs::write(&path, text + "\n")
                    .map_err(|e| input_failure(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Outcome::value(decomposition_json(&d)))
        }
        Command::Pd { file, d } => {
            let doc = read_doc(&file)?;
            let (pair, input) = coprime_input(&doc, "pd")?;
            let h = input.to_series(&pair)?;
            let d = d.unwrap_or(pair.product());
            let r: PdResult = pd(&h, d)?;
            Ok(Outcome::value(pd_json(d, r)))
        }
        Command::Selftest { quick, seed } => {
            let report = selftest::run(quick, seed);
            let passed = report["passed"].as_bool() == Some(true);
            Ok(Outcome {
                body: Some(report),
                verdict: None,
                status: if passed { 0 } else { 3 },
            })
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HDEP_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| {
        input_failure(format!(
            "HDEP_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    if n == 0 {
        return Err(input_failure(
            "HDEP_THREADS must be a positive integer, got 0",
        ));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| input_failure(e.to_string()))
}

fn emit(v: &Value) {
    println!("{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            emit(&json!({"error": msg.trim_end(), "kind": "usage"}));
            return ExitCode::from(2);
        }
    };
    if let Err(f) = configure_threads() {
        emit(&f.body);
        return ExitCode::from(f.status);
    }
    match run(cli.command) {
        Ok(out) => {
            if let Some(body) = &out.body {
                emit(body);
            }
            match (cli.quiet_status, out.verdict) {
                (true, Some(false)) => ExitCode::from(1),
                _ => ExitCode::from(out.status),
            }
        }
        Err(f) => {
            emit(&f.body);
            ExitCode::from(f.status)
        }
    }
}
