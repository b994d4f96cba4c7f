//! Subcommands of the `lud` binary, as functions from arguments to output
//! so they can be exercised without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lud::diagnostic::has_errors;
use lud::plugging_text::parse_plugging;
use lud::{
    build_drs, enumerate, parse_with_warnings, render_box, render_term, resolve, serialize, validate,
    EnumerationOptions, Lexicon, Lud, SearchMode, SurfaceMeta,
};

use crate::corpus::{run_corpus, split_entry, CorpusEntry};

/// Success.
pub const EXIT_OK: i32 = 0;
/// The input was read but a check failed.
pub const EXIT_FAILED: i32 = 1;
/// Bad arguments, unreadable files or malformed input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lud", version, about = "Underspecified discourse representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a file and print it in canonical form.
    Parse(InputArgs),
    /// Report structural problems.
    Validate(InputArgs),
    /// Print every admissible plugging.
    Enumerate {
        #[command(flatten)]
        input: InputArgs,
        /// Use the brute-force enumerator.
        #[arg(long)]
        oracle: bool,
        /// Stop after this many pluggings.
        #[arg(long)]
        max: Option<NonZeroUsize>,
    },
    /// Rank admissible pluggings by discourse-relation scope preferences.
    Resolve {
        #[command(flatten)]
        input: InputArgs,
        /// Surface positions, `l2=0 l3=3 ...`. Defaults to the entry's
        /// `surface:` header.
        #[arg(long)]
        meta: Option<PathBuf>,
        /// Relation lexicon. Defaults to the builtin one.
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
    /// Render one plugging as a DRS box or a scope term.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        plugging: PathBuf,
        #[arg(long, conflicts_with = "boxed")]
        term: bool,
        #[arg(long = "box")]
        boxed: bool,
    },
    /// Check every entry of a corpus directory.
    Corpus { dir: PathBuf },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// A LUD file, optionally with a corpus entry header.
    pub file: PathBuf,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Parse(input) => with_lud(&input.file, |lud, out| {
            out.stdout = serialize(&lud);
        }),
        Command::Validate(input) => with_lud(&input.file, |lud, out| {
            let diags = validate(&lud);
            for d in &diags {
                let _ = writeln!(out.stdout, "{d}");
            }
            if diags.is_empty() {
                out.stdout.push_str("ok\n");
            }
            if has_errors(&diags) {
                out.code = EXIT_FAILED;
            }
        }),
        Command::Enumerate { input, oracle, max } => with_lud(&input.file, |lud, out| {
            let opts = EnumerationOptions {
                max_solutions: max,
                mode: if oracle { SearchMode::Oracle } else { SearchMode::Propagating },
            };
            match enumerate(&lud, opts) {
                Ok(all) => {
                    let _ = writeln!(out.stdout, "# {} readings", all.len());
                    for (i, p) in all.iter().enumerate() {
                        let _ = write!(out.stdout, "\n# reading {}\n{p}", i + 1);
                    }
                }
                Err(e) => *out = Outcome::fail(EXIT_FAILED, e),
            }
        }),
        Command::Resolve { input, meta, lexicon } => resolve_cmd(&input.file, meta.as_deref(), lexicon.as_deref()),
        Command::Render {
            input,
            plugging,
            term,
            boxed: _,
        } => {
            let text = match fs::read_to_string(&plugging) {
                Ok(t) => t,
                Err(e) => return Outcome::fail(EXIT_USAGE, format!("{}: {e}", plugging.display())),
            };
            let p = match parse_plugging(&text) {
                Ok(p) => p,
                Err(e) => return Outcome::fail(EXIT_USAGE, format!("{}: {e}", plugging.display())),
            };
            with_lud(&input.file, |lud, out| {
                let rendered = if term {
                    render_term(&lud, &p).map(|t| t + "\n")
                } else {
                    build_drs(&lud, &p).map(|d| render_box(&d))
                };
                match rendered {
                    Ok(s) => out.stdout = s,
                    Err(e) => *out = Outcome::fail(EXIT_FAILED, e),
                }
            })
        }
        Command::Corpus { dir } => match run_corpus(&dir) {
            Ok(report) => Outcome {
                code: if report.passed() { EXIT_OK } else { EXIT_FAILED },
                stdout: report.to_string(),
                stderr: String::new(),
            },
            Err(e) => Outcome::fail(EXIT_USAGE, format!("{e:#}")),
        },
    }
}

/// Reads and parses `path`, then hands the result to `f`. Parse warnings go
/// to stderr.
fn with_lud(path: &Path, f: impl FnOnce(Lud, &mut Outcome)) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("{}: {e}", path.display())),
    };
    let (_, body) = split_entry(&text);
    match parse_with_warnings(&body) {
        Ok(parsed) => {
            let mut out = Outcome::default();
            f(parsed.lud, &mut out);
            let mut stderr = String::new();
            for w in &parsed.warnings {
                let _ = writeln!(stderr, "{}: {w}", path.display());
            }
            out.stderr = stderr + &out.stderr;
            out
        }
        Err(e) => {
            let mut stderr = String::new();
            for d in &e.diagnostics {
                let _ = writeln!(stderr, "{}: {d}", path.display());
            }
            Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn resolve_cmd(file: &Path, meta: Option<&Path>, lexicon: Option<&Path>) -> Outcome {
    let lexicon = match lexicon {
        None => Lexicon::builtin(),
        Some(p) => match fs::read_to_string(p).map_err(|e| e.to_string()).and_then(|t| Lexicon::parse(&t).map_err(|e| e.to_string())) {
            Ok(l) => l,
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("{}: {e}", p.display())),
        },
    };
    let surface = match meta {
        Some(p) => {
            let text = match fs::read_to_string(p) {
                Ok(t) => t,
                Err(e) => return Outcome::fail(EXIT_USAGE, format!("{}: {e}", p.display())),
            };
            let code: Vec<&str> = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect();
            match code.join(" ").parse::<SurfaceMeta>() {
                Ok(m) => m,
                Err(e) => return Outcome::fail(EXIT_USAGE, format!("{}: {e}", p.display())),
            }
        }
        None => match fs::read_to_string(file).ok().map(|t| CorpusEntry::from_text(file, &t)) {
            Some(Ok(entry)) => entry.surface,
            _ => SurfaceMeta::default(),
        },
    };
    with_lud(file, |lud, out| match resolve(&lud, &surface, &lexicon) {
        Ok(ranked) => {
            for w in &ranked.warnings {
                let _ = writeln!(out.stderr, "warning: {w}");
            }
            for (rank, group) in ranked.groups.iter().enumerate() {
                let _ = writeln!(
                    out.stdout,
                    "# rank {} ({} rules violated, {} readings)",
                    rank + 1,
                    group.violated_rules,
                    group.pluggings.len()
                );
                for p in &group.pluggings {
                    let term = render_term(&lud, p).unwrap_or_else(|e| e.to_string());
                    let _ = write!(out.stdout, "\n# {term}\n{p}");
                }
                out.stdout.push('\n');
            }
        }
        Err(e) => *out = Outcome::fail(EXIT_FAILED, e),
    })
}
