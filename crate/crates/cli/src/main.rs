//! `sr1kit`: JSON-first command-line access to the sr1kit library.
//!
//! Exit codes: 0 for a decided answer, 2 when the answer is unknown or a
//! bounded search came back empty (or a verification suite found a
//! counterexample), 1 for malformed input. Errors are printed as
//! `{"error": ..., "kind": ...}`.

mod pretty;
mod scan_driver;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sr1kit::clean::{all_exchange_witnesses, is_clean, is_exchange_bounded, CleanVerdict};
use sr1kit::scan::ScanParams;
use sr1kit::smith::smith_form;
use sr1kit::sr1::{
    is_sr1_integer, lsr1_finite, non_sr1_witness_scalar_diag, rsr1_finite, Sr1Reason,
};
use sr1kit::unitizer::{
    find_unitizer, search_unitizer_bounded, unitizer_diophantine_6_10, TableVariant,
};
use sr1kit::verify::{verify_int, verify_zmod};
use sr1kit::{Error, Int, Mat2, Ring};

#[derive(Parser, Debug)]
#[command(
    name = "sr1kit",
    version,
    about = "Stable range one, clean and exchange checks for 2x2 matrices"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Worker threads for scan and verify (default: all cores).
    #[arg(long, global = true, env = "SR1KIT_JOBS")]
    jobs: Option<usize>,

    /// Scalar ring: "int" or "zmod:N".
    #[arg(long, global = true, default_value = "int")]
    ring: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form U·A·V = diag(d1, d2).
    Smith {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Stable range one verdict (integers, or exhaustive over Z/N for N <= 6).
    Sr1 {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// A certified unitizer Y making A + Y(XA - I) invertible.
    Unitizer {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = Method::Pipeline)]
        method: Method,
        /// Entry bound for --method search.
        #[arg(long, default_value_t = 2)]
        bound: u64,
        /// Residue-class-1 row for --method table.
        #[arg(long, value_enum, default_value_t = Variant::Primary)]
        variant: Variant,
    },
    /// Decide whether A = E + U with E idempotent and U a unit.
    Clean {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        /// Box for conics that need a bounded scan.
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Search M in [-bound, bound]^4 with A + M(A - A^2) idempotent.
    Exchange {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = 3)]
        bound: u64,
        /// List every witness instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Census of sr1, clean and exchange matrices with entries in [-B, B].
    Scan {
        #[arg(long, default_value_t = 9)]
        entry_bound: i64,
        #[arg(long, default_value_t = 6)]
        clean_bound: i64,
        /// Exchange search bound.
        #[arg(long, default_value_t = 6)]
        bound: u64,
        /// Summary path; per-block records go to <path>.chunks.jsonl and are reused on restart.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the invariant suites over --ring.
    Verify {
        /// Enumerate the whole input space where the suite allows it.
        #[arg(long)]
        exhaustive: bool,
        /// Integer grid [-B, B]^4 used by --exhaustive with --ring int.
        #[arg(long, default_value_t = 4)]
        entry_bound: i64,
        /// Random samples for integer identities.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Pipeline,
    Search,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Variant {
    Primary,
    Alternative,
}

/// JSON payload plus exit status.
pub struct Reply {
    pub value: Value,
    pub code: u8,
}

impl Reply {
    fn decided(value: Value) -> Reply {
        Reply { value, code: 0 }
    }

    fn undecided(value: Value) -> Reply {
        Reply { value, code: 2 }
    }
}

pub enum CliError {
    Lib(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn to_json(&self) -> Value {
        match self {
            CliError::Lib(e) => json!({"error": e.to_string(), "kind": e.kind()}),
            CliError::Usage(m) => json!({"error": m, "kind": "usage"}),
        }
    }
}

type CliResult = Result<Reply, CliError>;

fn parse_matrix(text: &str) -> Result<Mat2<Int>, CliError> {
    Ok(text.parse::<Mat2<Int>>()?)
}

fn matrix_json(a: &Mat2<Int>) -> Value {
    serde_json::to_value(a).expect("matrices serialize")
}

fn run_smith(matrix: &str) -> CliResult {
    let a = parse_matrix(matrix)?;
    let s = smith_form(&a);
    let mut v = serde_json::to_value(&s).expect("smith form serializes");
    v["matrix"] = json!(a.format());
    Ok(Reply::decided(v))
}

fn run_sr1(matrix: &str, ring: Ring) -> CliResult {
    let a = parse_matrix(matrix)?;
    match ring {
        Ring::Integers => {
            let verdict = is_sr1_integer(&a);
            let mut v = json!({
                "matrix": a.format(),
                "ring": "int",
                "det": a.det(),
                "sr1": verdict.is_sr1,
                "reason": verdict.reason_label(),
            });
            let [a11, a12, a21, a22] = a.entries();
            if let Sr1Reason::DeterminantObstruction(_) = verdict.reason {
                if a12.is_zero() && a21.is_zero() && a11 == a22 {
                    let w = non_sr1_witness_scalar_diag(a11)?;
                    v["witness"] = serde_json::to_value(&w).expect("witness serializes");
                }
            }
            Ok(Reply::decided(v))
        }
        Ring::Zmod(n) => {
            let m = a.project(n)?;
            let left = lsr1_finite(&m)?;
            let right = rsr1_finite(&m)?;
            Ok(Reply::decided(json!({
                "matrix": m.lift().format(),
                "ring": ring.to_string(),
                "det": m.det(),
                "lsr1": left,
                "rsr1": right,
                "sr1": left && right,
            })))
        }
    }
}

fn run_unitizer(matrix: &str, x: &str, method: Method, bound: u64, variant: Variant) -> CliResult {
    let a = parse_matrix(matrix)?;
    let x = parse_matrix(x)?;
    let cert = match method {
        Method::Pipeline => find_unitizer(&a, &x)?,
        Method::Search => match search_unitizer_bounded(&a, &x, bound).certificate() {
            Some(c) => c.clone(),
            None => {
                return Ok(Reply::undecided(json!({
                    "A": matrix_json(&a),
                    "X": matrix_json(&x),
                    "found": false,
                    "bound": bound,
                })))
            }
        },
        Method::Table => {
            if a != Mat2::int(6, 10, 0, 0) {
                return Err(Error::InvalidArgument(
                    "--method table applies only to 6,10;0,0".into(),
                )
                .into());
            }
            let variant = match variant {
                Variant::Primary => TableVariant::Primary,
                Variant::Alternative => TableVariant::Alternative,
            };
            unitizer_diophantine_6_10(&x, variant)?
        }
    };
    let mut v = serde_json::to_value(&cert).expect("certificate serializes");
    v["found"] = json!(true);
    Ok(Reply::decided(v))
}

fn run_clean(matrix: &str, bound: u64) -> CliResult {
    let a = parse_matrix(matrix)?;
    let r = is_clean(&a, bound);
    let clean = match r.verdict {
        CleanVerdict::Clean => json!(true),
        CleanVerdict::NotClean => json!(false),
        CleanVerdict::Unknown => json!("unknown"),
    };
    let mut v = json!({
        "matrix": a.format(),
        "clean": clean,
        "complete": r.verdict != CleanVerdict::Unknown,
    });
    if let Some(w) = &r.witness {
        v["E"] = matrix_json(&w.e);
        v["U"] = matrix_json(&w.u);
    }
    if r.verdict == CleanVerdict::Unknown {
        v["bound"] = json!(bound);
        return Ok(Reply::undecided(v));
    }
    Ok(Reply::decided(v))
}

fn run_exchange(matrix: &str, bound: u64, all: bool) -> CliResult {
    let a = parse_matrix(matrix)?;
    if all {
        let witnesses = all_exchange_witnesses(&a, bound);
        let found = !witnesses.is_empty();
        let v = json!({
            "matrix": a.format(),
            "bound": bound,
            "found": found,
            "witnesses": witnesses,
        });
        return Ok(if found {
            Reply::decided(v)
        } else {
            Reply::undecided(v)
        });
    }
    let mut v = json!({"matrix": a.format(), "bound": bound});
    match is_exchange_bounded(&a, bound).witness() {
        Some(w) => {
            v["found"] = json!(true);
            v["M"] = matrix_json(&w.m);
            v["E"] = matrix_json(&w.e);
            Ok(Reply::decided(v))
        }
        None => {
            v["found"] = json!(false);
            Ok(Reply::undecided(v))
        }
    }
}

fn run_verify(ring: Ring, exhaustive: bool, entry_bound: i64, samples: usize) -> CliResult {
    let report = match ring {
        Ring::Zmod(n) => verify_zmod(n)?,
        Ring::Integers => verify_int(if exhaustive { entry_bound } else { 0 }, samples),
    };
    let v = serde_json::to_value(&report).expect("report serializes");
    Ok(if report.passed {
        Reply::decided(v)
    } else {
        Reply::undecided(v)
    })
}

fn dispatch(cli: &Cli) -> CliResult {
    let ring: Ring = cli.ring.parse()?;
    match &cli.command {
        Command::Smith { matrix } => run_smith(matrix),
        Command::Sr1 { matrix } => run_sr1(matrix, ring),
        Command::Unitizer {
            matrix,
            x,
            method,
            bound,
            variant,
        } => run_unitizer(matrix, x, *method, *bound, *variant),
        Command::Clean { matrix, bound } => run_clean(matrix, *bound),
        Command::Exchange { matrix, bound, all } => run_exchange(matrix, *bound, *all),
        Command::Scan {
            entry_bound,
            clean_bound,
            bound,
            json,
        } => {
            if *entry_bound < 1 {
                return Err(
                    Error::InvalidArgument("--entry-bound must be at least 1".into()).into(),
                );
            }
            let params = ScanParams {
                entry_bound: *entry_bound,
                clean_bound: *clean_bound,
                exchange_bound: *bound,
            };
            scan_driver::run(params, json.as_deref(), cli.pretty)
        }
        Command::Verify {
            exhaustive,
            entry_bound,
            samples,
        } => run_verify(ring, *exhaustive, *entry_bound, *samples),
    }
}

fn configure_threads(cli: &Cli) {
    let parallel = matches!(cli.command, Command::Scan { .. } | Command::Verify { .. });
    let threads = if parallel { cli.jobs.unwrap_or(0) } else { 1 };
    // 0 lets rayon pick the core count.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
}

fn emit(value: &Value, pretty: bool) {
    if pretty {
        print!("{}", pretty::render(value));
    } else {
        println!("{}", serde_json::to_string(value).expect("json"));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.kind().to_string();
            let detail = e.to_string();
            let first = detail
                .lines()
                .next()
                .unwrap_or(&message)
                .trim_start_matches("error: ");
            emit(&CliError::Usage(first.to_string()).to_json(), false);
            return ExitCode::from(1);
        }
    };
    configure_threads(&cli);
    match dispatch(&cli) {
        Ok(reply) => {
            emit(&reply.value, cli.pretty);
            ExitCode::from(reply.code)
        }
        Err(e) => {
            emit(&e.to_json(), false);
            ExitCode::from(1)
        }
    }
}
