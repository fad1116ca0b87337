//! Command-line front end.
//!
//! Exit codes: 0 accepted / realized / verified / exists, 1 rejected /
//! nonexistent / verification failed, 2 usage or parse error, 3 internal
//! invariant violation.

mod emit;
mod parse;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use emit::{emit_dot, emit_edgelist, read_edgelist, EdgeListError};
pub use parse::{parse_sequence, parse_tokens, read_source, ParseError};

use crate::checker;
use crate::factorize::{self, FactorizeError};
use crate::oracle::{self, OracleError};
use crate::realizer::{self, RealizeOptions};
use crate::sequence::DegreeSequence;
use crate::verify::verify_realization;

/// Environment variable overriding the oracle's enumeration cap.
pub const NMAX_ENV: &str = "HFACTOR_NMAX";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hfactor",
    version,
    about = "Degree sequences with a spanning clique factor"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether SEQ is realizable with H_h as a spanning subgraph.
    Check {
        #[arg(long)]
        h: u32,
        /// Degrees, comma or whitespace separated, or @file.
        #[arg(required = true, num_args = 1..)]
        seq: Vec<String>,
    },
    /// Build a realization containing H_h.
    Realize {
        #[arg(long)]
        h: u32,
        #[arg(required = true, num_args = 1..)]
        seq: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        /// Write the move log here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Re-check every invariant after every move.
        #[arg(long)]
        audit: bool,
    },
    /// Check that an edge list realizes SEQ and contains H_h.
    Verify {
        #[arg(long)]
        h: u32,
        #[arg(required = true, num_args = 1..)]
        seq: Vec<String>,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Brute-force existence for SEQ, or a checker-vs-oracle sweep.
    Oracle {
        #[arg(long)]
        h: u32,
        #[arg(num_args = 1.., required_unless_present = "sweep", conflicts_with = "sweep")]
        seq: Vec<String>,
        #[arg(long, requires = "nmax")]
        sweep: bool,
        #[arg(long)]
        nmax: Option<usize>,
        /// Worker threads for the sweep; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Realize SEQ and split H_h into h perfect matchings (odd h).
    Matchings {
        #[arg(long)]
        h: u32,
        #[arg(required = true, num_args = 1..)]
        seq: Vec<String>,
    },
    /// Sample an accepted sequence.
    Gen {
        #[arg(long)]
        h: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn internal(e: impl ToString) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e)
    }
}

type Outcome = Result<i32, Failure>;

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "hfactor: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Check { h, seq } => {
            let degrees = parse_tokens(&seq.join(" ")).map_err(Failure::usage)?;
            let verdict = checker::check_h_realizable(&degrees, h);
            writeln!(out, "{}", verdict.to_json())?;
            Ok(if verdict.accepted {
                EXIT_OK
            } else {
                EXIT_REJECTED
            })
        }
        Command::Realize {
            h,
            seq,
            format,
            trace,
            audit,
        } => {
            let seq = match accepted_sequence(&seq, h, out)? {
                Ok(seq) => seq,
                Err(code) => return Ok(code),
            };
            let options = RealizeOptions {
                trace: trace.is_some(),
                audit,
            };
            let report = realizer::realize(&seq, options).map_err(Failure::internal)?;
            if let Some(path) = trace {
                fs::write(&path, report.trace_text())
                    .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let shape = seq.shape().map_err(Failure::internal)?;
            let text = match format {
                Format::Edgelist => emit_edgelist(&report.graph, &shape),
                Format::Dot => emit_dot(&report.graph, &shape),
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Verify { h, seq, graph } => {
            let seq = parse_sequence(&seq.join(" "), h).map_err(Failure::usage)?;
            let shape = seq.shape().map_err(Failure::usage)?;
            let text = fs::read_to_string(&graph)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", graph.display())))?;
            let (g, graph_h) = read_edgelist(&text).map_err(Failure::usage)?;
            if graph_h != h as usize {
                return Err(Failure::usage(format!(
                    "graph header has h = {graph_h}, expected {h}"
                )));
            }
            let report = verify_realization(&g, &seq, &shape).map_err(Failure::usage)?;
            writeln!(
                out,
                "{}",
                serde_json::to_string(&report).expect("report serializes")
            )?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_REJECTED
            })
        }
        Command::Oracle {
            h,
            seq,
            sweep,
            nmax,
            jobs,
        } => {
            let cap = enumeration_cap()?;
            if sweep {
                let nmax = nmax.ok_or_else(|| Failure::usage("--sweep needs --nmax"))?;
                let report =
                    oracle::sweep_equivalence(&[h], nmax, cap, jobs).map_err(oracle_failure)?;
                write!(out, "{report}")?;
                return Ok(if report.disagreements.is_empty() {
                    EXIT_OK
                } else {
                    EXIT_REJECTED
                });
            }
            let seq = parse_sequence(&seq.join(" "), h).map_err(Failure::usage)?;
            let exists = oracle::decide_exists(&seq, cap).map_err(oracle_failure)?;
            writeln!(out, "{}", serde_json::json!({ "exists": exists }))?;
            Ok(if exists { EXIT_OK } else { EXIT_REJECTED })
        }
        Command::Matchings { h, seq } => {
            if h % 2 == 0 {
                return Err(Failure::usage(FactorizeError::UnsupportedEvenH(h as usize)));
            }
            let seq = match accepted_sequence(&seq, h, out)? {
                Ok(seq) => seq,
                Err(code) => return Ok(code),
            };
            let report =
                realizer::realize(&seq, RealizeOptions::default()).map_err(Failure::internal)?;
            let shape = seq.shape().map_err(Failure::internal)?;
            let matchings =
                factorize::extract_matchings(&report.graph, &shape).map_err(Failure::internal)?;
            for (t, m) in matchings.iter().enumerate() {
                let pairs: Vec<String> = m.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                writeln!(out, "M{}: {}", t + 1, pairs.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        Command::Gen { h, n, seed } => {
            let seq = oracle::gen_sequence(n, h, seed).map_err(Failure::usage)?;
            let text: Vec<String> = seq.degrees().iter().map(u32::to_string).collect();
            writeln!(out, "{}", text.join(","))?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the checker on the raw tokens; a rejection prints the verdict and
/// yields exit code 1.
fn accepted_sequence(
    seq: &[String],
    h: u32,
    out: &mut dyn Write,
) -> Result<Result<DegreeSequence, i32>, Failure> {
    let degrees = parse_tokens(&seq.join(" ")).map_err(Failure::usage)?;
    let verdict = checker::check_h_realizable(&degrees, h);
    if !verdict.accepted {
        writeln!(out, "{}", verdict.to_json())?;
        return Ok(Err(EXIT_REJECTED));
    }
    DegreeSequence::new(degrees, h)
        .map(Ok)
        .map_err(Failure::internal)
}

fn enumeration_cap() -> Result<usize, Failure> {
    match std::env::var(NMAX_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{NMAX_ENV}={v:?} is not a number"))),
        Err(_) => Ok(oracle::DEFAULT_NMAX),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::CapExceeded { .. } | OracleError::Shape(_) => Failure::usage(e),
        _ => Failure::internal(e),
    }
}
