//! Command-line front end.
//!
//! Exit status: 0 success, 1 not a true entangled state, 2 unreadable
//! input, 3 ill-conditioned or indeterminate, 4 fuzzing found failures.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::canonical::{canonicalize, Exactness};
use crate::classify::{descriptor_of, slocc_equivalent, Verdict};
use crate::enumerate::enumerate_classes_capped;
use crate::error::{Error, Result};
use crate::fuzz::{check_case, run_fuzz, FuzzConfig};
use crate::io;
use crate::linalg::DEFAULT_TOL;
use crate::state::grid_render;

/// Exit status when a fuzz run reports failing trials.
pub const EXIT_FUZZ_FAILURES: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "slocc", version, about = "SLOCC classification of 2xNxN pure states")]
pub struct Cli {
    /// Guard band for numeric root and rank decisions.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Descriptor, canonical form and witness of a state file.
    Classify {
        file: PathBuf,
        /// Human-readable summary instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Canonical pair; optionally writes the operator that produces it.
    Canonicalize {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        witness: Option<PathBuf>,
    },
    /// Decides SLOCC equivalence of two state files.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Where to write an operator mapping A onto B, when one is found.
        #[arg(long, value_name = "OUT")]
        witness: Option<PathBuf>,
    },
    /// Atlas of class families for dimension N.
    Enumerate {
        n: usize,
        #[arg(long)]
        markdown: bool,
        #[arg(long, default_value_t = crate::enumerate::DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
    /// Invariance fuzzing over the families of dimension N.
    Fuzz {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for failure dumps.
        #[arg(long, default_value = "fuzz-failures")]
        out: PathBuf,
        /// Replays one dumped case: a state file and an operator file.
        #[arg(long, num_args = 2, value_names = ["STATE", "OP"])]
        replay: Option<Vec<PathBuf>>,
    },
    /// Text picture of the cubic grid of coefficients.
    Grid { file: PathBuf },
}

/// Parses the process arguments and runs; returns the exit status.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    execute(&cli, &mut stdout.lock())
}

/// Runs a parsed command, printing results to `out` and errors to stderr.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(Error::from)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let tol = cli.tol;
    match &cli.command {
        Command::Classify { file, table } => {
            let pair = io::read_pair(file)?;
            let descriptor = descriptor_of(&pair, tol)?;
            let mut warnings = Vec::new();
            let canonical = match canonicalize(&pair, tol) {
                Ok(c) => Some(c),
                Err(e @ (Error::IllConditioned(_) | Error::Indeterminate(_))) => {
                    warnings.push(format!("no canonical form: {e}"));
                    None
                }
                Err(e) => return Err(e),
            };
            if !descriptor.is_exact() {
                warnings.push("singular points are irrational; values are approximate".into());
            }
            let text = if *table {
                io::report_table(&descriptor, canonical.as_ref())
            } else {
                io::report_to_json(&pair, &descriptor, canonical.as_ref(), warnings) + "\n"
            };
            out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Canonicalize { file, witness } => {
            let pair = io::read_pair(file)?;
            let c = canonicalize(&pair, tol)?;
            writeln!(out, "{}", c.pair)?;
            let status = c.witness.verify(&pair, &c.pair);
            match status {
                Exactness::Exact => writeln!(out, "witness: exact")?,
                Exactness::Approximate { residual } => writeln!(out, "witness: approximate, residual {residual:.3e}")?,
            }
            for note in &c.notes {
                writeln!(out, "note: {note}")?;
            }
            if let Some(path) = witness {
                write_file(path, &io::operator_to_json(&c.witness.ops))?;
            }
            Ok(0)
        }
        Command::Equiv { a, b, witness } => {
            let (pa, pb) = (io::read_pair(a)?, io::read_pair(b)?);
            let eq = slocc_equivalent(&pa, &pb, tol)?;
            writeln!(out, "{}", eq.verdict)?;
            if let (Some(path), Some(op)) = (witness, &eq.witness) {
                write_file(path, &io::operator_to_json(op))?;
            }
            Ok(if eq.verdict == Verdict::Indeterminate { Error::Indeterminate(String::new()).exit_code() } else { 0 })
        }
        Command::Enumerate { n, markdown, max_dim } => {
            let families = enumerate_classes_capped(*n, *max_dim, tol)?;
            let text = if *markdown { io::atlas_to_markdown(&families) } else { io::atlas_to_json(&families) + "\n" };
            out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Fuzz { n, trials, seed, out: dir, replay } => {
            if let Some(files) = replay {
                let state = io::read_pair(&files[0])?;
                let op = io::parse_operator(&std::fs::read_to_string(&files[1])?)?;
                return Ok(match check_case(&state, &op, tol) {
                    Ok(()) => {
                        writeln!(out, "pass")?;
                        0
                    }
                    Err(reason) => {
                        writeln!(out, "fail: {reason}")?;
                        EXIT_FUZZ_FAILURES
                    }
                });
            }
            let report = run_fuzz(&FuzzConfig { dim: *n, trials: *trials, seed: *seed, tol })?;
            writeln!(out, "N={n} families={} trials={} failures={}", report.families, report.trials, report.failures.len())?;
            if report.failures.is_empty() {
                return Ok(0);
            }
            std::fs::create_dir_all(dir)?;
            for f in &report.failures {
                let state = dir.join(format!("trial-{}-state.json", f.trial));
                let op = dir.join(format!("trial-{}-op.json", f.trial));
                write_file(&state, &io::pair_to_json(&f.case.state))?;
                write_file(&op, &io::operator_to_json(&f.case.op))?;
                writeln!(out, "trial {} [{}]: {} (replay: --replay {} {})", f.trial, f.case.family, f.reason, state.display(), op.display())?;
            }
            Ok(EXIT_FUZZ_FAILURES)
        }
        Command::Grid { file } => {
            let pair = io::read_pair(file)?;
            out.write_all(grid_render(&pair).as_bytes())?;
            Ok(0)
        }
    }
}
