//! Command-line front end: argument parsing, query execution, rendering and
//! exit codes. The binary is a thin wrapper around [`run`].

pub mod query;
pub mod render;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use segre_core::{SegreError, TransformStep};

pub use query::{execute, Query, Report};
pub use render::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SOFT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "segre", version, about = "Segre invariants of vector bundles on curves")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hirschowitz and Mukai–Sakai upper bounds for s_k.
    Bound {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        k: i64,
    },
    /// Generic value s_max and the admissible s for each k.
    Smax {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        k: Option<i64>,
    },
    /// Every nonempty stratum with its dimension and maximal-locus dimension.
    Strata {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Construction certificate for a prescribed s_k.
    Construct {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        s: i64,
    },
    /// Apply a sequence of elementary transformations to a Segre profile.
    Transform {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Starting profile `s_1,...,s_{r-1}`; the general profile by default.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        s: Option<Vec<i64>>,
        /// One step, e.g. `I,II,I`. Repeat for a sequence.
        #[arg(long = "step")]
        steps: Vec<TransformStep>,
        /// Downgrade type II to type I wherever the caps would be exceeded.
        #[arg(long)]
        filtered: bool,
    },
    /// Run the brute-force oracles and the seeded fuzz checks.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Execute JSON-lines queries from FILE or stdin.
    Batch {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
}

impl Command {
    fn to_query(&self) -> Option<Query> {
        Some(match self {
            Command::Bound { g, r, k } => Query::Bound { g: *g, r: *r, k: *k },
            Command::Smax { g, r, d, k } => Query::Smax { g: *g, r: *r, d: *d, k: *k },
            Command::Strata { g, r, d } => Query::Strata { g: *g, r: *r, d: *d },
            Command::Construct { g, r, d, k, s } => Query::Construct {
                g: *g,
                r: *r,
                d: *d,
                k: *k,
                s: *s,
            },
            Command::Transform {
                g,
                r,
                d,
                s,
                steps,
                filtered,
            } => Query::Transform {
                g: *g,
                r: *r,
                d: *d,
                s: s.clone(),
                steps: steps.clone(),
                filtered: *filtered,
            },
            Command::Verify { seed, trials } => Query::Verify {
                seed: *seed,
                trials: *trials,
            },
            Command::Batch { .. } => return None,
        })
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn error_code(err: &SegreError) -> i32 {
    if err.is_overflow() {
        EXIT_OVERFLOW
    } else {
        EXIT_INVALID
    }
}

/// Parses `args` (including the program name) and runs the command. `stdin`
/// is read only by `batch` without `--input`.
pub fn run<I, T>(args: I, stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::err(code, text)
            } else {
                Outcome::ok(code, text)
            };
        }
    };
    let outcome = match &cli.command {
        Command::Batch { input } => {
            let text = match input {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display())),
                None => stdin().map_err(|e| format!("cannot read stdin: {e}")),
            };
            match text {
                Ok(text) => {
                    let (code, stdout) = run_batch(&text);
                    Outcome::ok(code, stdout)
                }
                Err(msg) => Outcome::err(EXIT_INVALID, format!("error: {msg}\n")),
            }
        }
        cmd => {
            let query = cmd.to_query().expect("non-batch command");
            match execute(&query) {
                Ok(report) => match render::render(&report, cli.format) {
                    Ok(text) => Outcome::ok(report.status(), text),
                    Err(msg) => Outcome::err(EXIT_INVALID, format!("error: {msg}\n")),
                },
                Err(e) => Outcome::err(error_code(&e), format!("error: {e}\n")),
            }
        }
    };
    match &cli.out {
        Some(path) if !outcome.stdout.is_empty() => match write_atomic(path, &outcome.stdout) {
            Ok(()) => Outcome {
                stdout: String::new(),
                ..outcome
            },
            Err(e) => Outcome::err(
                EXIT_INVALID,
                format!("error: cannot write {}: {e}\n", path.display()),
            ),
        },
        _ => outcome,
    }
}

/// Runs one query per line and returns one JSON record per line.
/// The exit code is the largest per-line status.
pub fn run_batch(input: &str) -> (i32, String) {
    let mut out = String::new();
    let mut code = EXIT_OK;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        let record = if trimmed.is_empty() {
            code = code.max(EXIT_INVALID);
            json!({"line": line, "status": EXIT_INVALID, "error": "empty line"})
        } else {
            match serde_json::from_str::<Query>(trimmed) {
                Err(e) => {
                    code = code.max(EXIT_INVALID);
                    json!({"line": line, "status": EXIT_INVALID, "error": format!("invalid query: {e}")})
                }
                Ok(query) => match execute(&query) {
                    Ok(report) => {
                        let status = report.status();
                        code = code.max(status);
                        json!({"line": line, "status": status, "result": report})
                    }
                    Err(e) => {
                        let status = error_code(&e);
                        code = code.max(status);
                        json!({"line": line, "status": status, "error": e.to_string()})
                    }
                },
            }
        };
        out.push_str(&record.to_string());
        out.push('\n');
    }
    (code, out)
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
