//! Command-line front end for exact toric and polyhedral analysis of
//! combinatorial neural codes. Every subcommand prints machine-readable
//! JSON (or plain text for `code`); `--pretty` reformats for humans.

mod cache;
mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand};
use codetoric::Error;
use commands::{CodeSel, Method, Rendered};
use verify::Suite;

#[derive(Parser)]
#[command(
    name = "codetoric",
    version,
    about = "Exact toric and polyhedral analysis of combinatorial neural codes"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a code: 0/1 words one per line, or JSON with --json.
    Code {
        #[command(flatten)]
        sel: CodeSel,
        /// Emit the JSON representation instead of plain lines.
        #[arg(long)]
        json: bool,
    },
    /// Reduced Groebner basis of the code's toric ideal under a weight order.
    Gb {
        #[command(flatten)]
        sel: CodeSel,
        /// Comma-separated integer weights, one per variable (default: all ones).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        weight: Option<Vec<i64>>,
        /// Degree cap for the primitive-element enumeration.
        #[arg(long, default_value_t = 10)]
        degree_bound: u32,
    },
    /// Graver basis (all primitive kernel binomials) of the code's matrix.
    Graver {
        #[command(flatten)]
        sel: CodeSel,
        #[arg(long, default_value_t = 10)]
        degree_bound: u32,
    },
    /// Universal Groebner basis with its computation route and degree census.
    Ugb {
        #[command(flatten)]
        sel: CodeSel,
        #[arg(long, default_value_t = 10)]
        degree_bound: u32,
    },
    /// State polytope by vertex summation, by reflected fiber sums, or both.
    StatePolytope {
        #[command(flatten)]
        sel: CodeSel,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value_t = 10)]
        degree_bound: u32,
        /// Directory for cached results.
        #[arg(long, env = "CODETORIC_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Inductive piercedness of a code, with a removal certificate.
    Pierced {
        #[command(flatten)]
        sel: CodeSel,
        /// Piercing level.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Maximal nested sets of the star-graph building set.
    Nested {
        #[arg(long)]
        n: usize,
    },
    /// Path-family face-count comparison: codes, bases, state polytope,
    /// f-vector, and the observational report.
    Conjecture {
        /// Comma-separated component lengths, or one length combined with --n.
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<u32>,
        /// Number of path components; a scalar --l is padded with zeros.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        degree_bound: u32,
    },
    /// Run the verification suite; one JSON report per line, in id order.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest family size to verify.
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Concurrent checks (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let guard = matches!(e.downcast_ref::<Error>(), Some(Error::GuardExceeded(_)));
            let kind = if guard { "guard" } else { "error" };
            eprintln!("{}", serde_json::json!({ "error": format!("{e:#}"), "kind": kind }));
            if guard {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let pretty = cli.pretty;
    let rendered = match cli.cmd {
        Cmd::Code { sel, json } => commands::cmd_code(&sel, json)?,
        Cmd::Gb { sel, weight, degree_bound } => commands::cmd_gb(&sel, weight, degree_bound)?,
        Cmd::Graver { sel, degree_bound } => commands::cmd_graver(&sel, degree_bound)?,
        Cmd::Ugb { sel, degree_bound } => commands::cmd_ugb(&sel, degree_bound)?,
        Cmd::StatePolytope { sel, method, degree_bound, cache_dir } => {
            commands::cmd_state_polytope(&sel, method, degree_bound, cache_dir)?
        }
        Cmd::Pierced { sel, k } => commands::cmd_pierced(&sel, k)?,
        Cmd::Nested { n } => commands::cmd_nested(n)?,
        Cmd::Conjecture { l, n, degree_bound } => commands::cmd_conjecture(l, n, degree_bound)?,
        Cmd::VerifyPaper { suite, n_max, jobs } => {
            let jobs = jobs
                .unwrap_or_else(|| thread::available_parallelism().map(Into::into).unwrap_or(4));
            let outcome = verify::run_suite(suite, n_max, jobs)?;
            print_reports(&outcome.reports, pretty)?;
            return Ok(if outcome.failed { ExitCode::from(1) } else { ExitCode::SUCCESS });
        }
    };
    match rendered {
        Rendered::Json(v) => {
            if pretty {
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("{v}");
            }
        }
        Rendered::Text(t) => print!("{t}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_reports(reports: &[verify::Report], pretty: bool) -> anyhow::Result<()> {
    if pretty {
        println!("{}", serde_json::to_string_pretty(reports)?);
    } else {
        for r in reports {
            println!("{}", serde_json::to_string(r)?);
        }
    }
    Ok(())
}
