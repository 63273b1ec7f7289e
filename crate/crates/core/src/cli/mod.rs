//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error, 3 usage
//! error.

pub mod analyze;
pub mod bench;
pub mod embed;
pub mod format;
pub mod tables;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::ket::parse_state;
use crate::observables::{DEFAULT_ENGINE, DEFAULT_EPSILON};

pub use analyze::{analyze, AnalysisDocument, AnalyzeOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qsegre", version, about = "Entanglement observables and Segre decomposability of pure qubit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Observables, block count and factorization of one or more states.
    Analyze {
        /// State in ket notation, e.g. "1/sqrt(2)(|00>+|11>)".
        #[arg(long, required_unless_present = "file", conflicts_with = "file")]
        state: Option<String>,
        /// File with one expression per line; `#` starts a comment.
        #[arg(long)]
        file: Option<std::path::PathBuf>,
        /// Qubit order such as "ACB" or "1,3,2".
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value = DEFAULT_ENGINE, value_parser = ["pauli", "minors", "purity"])]
        engine: String,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long)]
        json: bool,
    },
    /// Reference tables with computed and expected values.
    Tables {
        #[arg(long)]
        json: bool,
    },
    /// Seeded verification suites.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Engine timings on Haar-random states.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generalized Segre image of a list of states.
    Embed {
        #[arg(required = true)]
        states: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}:{line}: {source}")]
    InFile {
        path: String,
        line: usize,
        source: Error,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let lib = |e: &Error| match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::InconsistentCuts { .. } => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        match self {
            CliError::Lib(e) => lib(e),
            CliError::InFile { source, .. } => lib(source),
            CliError::Io { .. } => EXIT_USAGE,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

/// Nonblank lines of `text` with `#` comments removed, numbered from 1.
pub fn expression_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| (i + 1, body.to_string()))
        })
        .collect()
}

fn emit<T: Serialize>(out: &mut dyn Write, json: bool, value: &T, text: String) -> std::io::Result<()> {
    if json {
        let s = serde_json::to_string_pretty(value).expect("report serializes");
        writeln!(out, "{s}")
    } else {
        write!(out, "{text}")
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn run_command(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Analyze {
            state,
            file,
            order,
            engine,
            epsilon,
            json,
        } => {
            let opts = AnalyzeOptions {
                order: order.as_deref(),
                engine: &engine,
                epsilon,
            };
            if let Some(expr) = state {
                let psi = parse_state(&expr)?;
                let doc = analyze(&expr, &psi, &opts)?;
                emit(out, json, &doc, doc.render_text()).map_err(io_err)?;
                return Ok(EXIT_OK);
            }
            let path = file.expect("clap requires --state or --file");
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
                path: shown.clone(),
                source,
            })?;
            let mut docs = Vec::new();
            for (line, expr) in expression_lines(&text) {
                let at = |source: Error| CliError::InFile {
                    path: shown.clone(),
                    line,
                    source,
                };
                let psi = parse_state(&expr).map_err(at)?;
                docs.push(analyze(&expr, &psi, &opts).map_err(at)?);
            }
            let text = docs
                .iter()
                .map(AnalysisDocument::render_text)
                .collect::<Vec<_>>()
                .join("\n");
            emit(out, json, &docs, text).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Tables { json } => {
            let r = tables::tables()?;
            emit(out, json, &r, r.render_text()).map_err(io_err)?;
            Ok(if r.all_passed() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Verify {
            n,
            trials,
            seed,
            json,
        } => {
            let r = verify::verify(n, trials, seed)?;
            emit(out, json, &r, r.render_text()).map_err(io_err)?;
            Ok(if r.all_passed() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Bench {
            n,
            ell,
            reps,
            seed,
            json,
        } => {
            let r = bench::bench(n, ell, reps, seed)?;
            emit(out, json, &r, r.render_text()).map_err(io_err)?;
            if !r.agree {
                return Err(CliError::Verification(format!(
                    "engines disagree by {}",
                    format::num(r.max_deviation)
                )));
            }
            Ok(EXIT_OK)
        }
        Command::Embed { states, json } => {
            let r = embed::embed(&states)?;
            emit(out, json, &r, r.render_text()).map_err(io_err)?;
            Ok(if r.ok() { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match run_command(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qsegre"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["analyze", "--state", "|000>+|111>"]).0, EXIT_OK);
        let (code, _, err) = call(&["analyze", "--state", "|00>+|1"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("1:"), "{err}");
        assert_eq!(call(&["analyze", "--state", "|00>+|111>"]).0, EXIT_USAGE);
        assert_eq!(call(&["analyze", "--state", "|00>", "--order", "ABC"]).0, EXIT_USAGE);
        assert_eq!(call(&["analyze", "--state", "|00>", "--engine", "x"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["bench", "--n", "30", "--ell", "1", "--reps", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn comment_lines() {
        let lines = expression_lines("# header\n|00>  # bell-free\n\n  |01>+|10>\n");
        assert_eq!(
            lines,
            vec![(2, "|00>".to_string()), (4, "|01>+|10>".to_string())]
        );
    }

    #[test]
    fn embed_command() {
        let (code, out, _) = call(&["embed", "|0>", "1/sqrt(2)(|00>+|11>)"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("[1:0:0:1:0:0:0:0]"));
    }
}
