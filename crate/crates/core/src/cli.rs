//! The `ttg` command line.
//!
//! Exit codes: 0 on success, 1 on usage or validation errors, 2 when a
//! cross-check finds a mismatch.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{
    classify, delta_minimal, max_losing_profiles, min_winning_profiles, null_voters, parametrize,
    realize, winning_profiles, Classification,
};
use crate::counting::{count_h_formula, count_h_sum, fib};
use crate::enumeration::{enumerate_all, enumerate_split};
use crate::model::{parse_rows, validate_spec, CompleteGameSpec, SimpleGame, MAX_VOTERS};
use crate::oracle::cross_check;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;

/// Largest `n` accepted by `count --method enumerate`.
pub const MAX_ENUMERATE_COUNT: u64 = 24;

#[derive(Debug, Parser)]
#[command(
    name = "ttg",
    version,
    about = "Complete simple games with two types of voters"
)]
pub struct CommandConfig {
    /// Write standard output to this file instead.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of non-isomorphic complete games with n voters of two types.
    Count {
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Stream every game specification on n voters.
    Enumerate {
        n: u32,
        /// Only the split with this many voters of the first type.
        #[arg(long)]
        split: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Report on a single specification.
    Inspect {
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        /// Rows separated by ';', entries by ',', e.g. "2,0;0,3".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Classify an explicit game given as JSON.
    Classify { file: PathBuf },
    /// Cross-check the closed form against enumeration and a brute-force census.
    Verify { n_max: u32 },
    /// Fibonacci number F(n), with F(0) = 0.
    Fib { n: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Sum,
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CommandConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match &config.output {
        None => execute(&config.command, out),
        Some(path) => match fs::File::create(path) {
            Ok(file) => {
                let mut file = io::BufWriter::new(file);
                execute(&config.command, &mut file).and_then(|()| Ok(file.flush()?))
            }
            Err(e) => Err(usage(format!("cannot create {}: {e}", path.display()))),
        },
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "mismatch: {msg}");
            EXIT_MISMATCH
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    match *command {
        Command::Count { n, method } => cmd_count(n, method, out),
        Command::Enumerate {
            n,
            split,
            format,
            limit,
        } => cmd_enumerate(n, split, format, limit, out),
        Command::Inspect { n1, n2, ref matrix } => cmd_inspect(n1, n2, matrix, out),
        Command::Classify { ref file } => cmd_classify(file, out),
        Command::Verify { n_max } => cmd_verify(n_max, out),
        Command::Fib { n } => Ok(writeln!(out, "{}", fib(n))?),
    }
}

fn cmd_count(n: u64, method: Method, out: &mut dyn Write) -> Result<(), Failure> {
    let value = match method {
        Method::Formula => count_h_formula(n),
        Method::Sum => count_h_sum(n),
        Method::Enumerate => {
            if n > MAX_ENUMERATE_COUNT {
                return Err(usage(format!(
                    "--method enumerate supports n <= {MAX_ENUMERATE_COUNT}, got {n}"
                )));
            }
            enumerate_all(n as u32).count().into()
        }
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn cmd_enumerate(
    n: u32,
    split: Option<u32>,
    format: Format,
    limit: Option<usize>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if n < 2 {
        return Err(usage(format!("enumerate needs n >= 2, got {n}")));
    }
    let specs: Box<dyn Iterator<Item = CompleteGameSpec>> = match split {
        None => Box::new(enumerate_all(n)),
        Some(n1) if (1..n).contains(&n1) => Box::new(enumerate_split(n1, n - n1)),
        Some(n1) => return Err(usage(format!("--split must be in 1..={}, got {n1}", n - 1))),
    };
    let specs = specs.take(limit.unwrap_or(usize::MAX));
    match format {
        Format::Jsonl => {
            let mut out = io::BufWriter::new(out);
            for spec in specs {
                writeln!(out, "{}", spec.to_json())?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer
                .write_record(["n1", "n2", "r", "rows"])
                .map_err(csv_error)?;
            for spec in specs {
                writer
                    .write_record([
                        spec.n1().to_string(),
                        spec.n2().to_string(),
                        spec.matrix().len().to_string(),
                        spec.matrix().to_string(),
                    ])
                    .map_err(csv_error)?;
            }
            writer.flush()?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Failure {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => Failure::Io(e),
        other => Failure::Io(io::Error::other(format!("{other:?}"))),
    }
}

#[derive(Serialize)]
struct InspectReport<'a> {
    spec: &'a CompleteGameSpec,
    winning_profiles: Vec<crate::model::Profile>,
    min_winning_profiles: Vec<crate::model::Profile>,
    delta_minimal_rows: Vec<crate::model::Profile>,
    minimal_winning: Vec<Vec<u32>>,
    max_losing_profiles: Vec<crate::model::Profile>,
    null_voters: Vec<u32>,
}

fn cmd_inspect(n1: u32, n2: u32, matrix: &str, out: &mut dyn Write) -> Result<(), Failure> {
    let rows = parse_rows(matrix).map_err(|e| usage(e.to_string()))?;
    let spec = validate_spec(n1, n2, rows).map_err(|e| usage(format!("invalid spec: {e}")))?;
    if spec.n() as usize > MAX_VOTERS {
        return Err(usage(format!(
            "inspect materializes the game; n1 + n2 must be <= {MAX_VOTERS}"
        )));
    }
    let game = realize(&spec);
    let winning = winning_profiles(&spec);
    let report = InspectReport {
        spec: &spec,
        delta_minimal_rows: delta_minimal(&winning),
        winning_profiles: winning,
        min_winning_profiles: min_winning_profiles(&spec),
        minimal_winning: game.minimal_winning_sorted(),
        max_losing_profiles: max_losing_profiles(&spec),
        null_voters: null_voters(&game),
    };
    let text = serde_json::to_string(&report).expect("report serializes");
    writeln!(out, "{text}")?;
    Ok(())
}

/// JSON verdict for an explicit game.
pub fn classification_report(game: &SimpleGame) -> serde_json::Value {
    match classify(game) {
        Classification::Incomplete(witness) => json!({ "complete": false, "witness": witness }),
        Classification::Complete(partition) => {
            let mut report = json!({
                "complete": true,
                "types": partition.len(),
                "classes": partition.classes(),
            });
            if partition.len() == 2 {
                let spec = parametrize(game).expect("complete with two classes");
                report["spec"] = serde_json::to_value(spec).expect("spec serializes");
            }
            report
        }
    }
}

fn cmd_classify(file: &PathBuf, out: &mut dyn Write) -> Result<(), Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let game: SimpleGame = serde_json::from_str(&text)
        .map_err(|e| usage(format!("malformed game in {}: {e}", file.display())))?;
    writeln!(out, "{}", classification_report(&game))?;
    Ok(())
}

fn cmd_verify(n_max: u32, out: &mut dyn Write) -> Result<(), Failure> {
    let report = cross_check(n_max).map_err(|e| usage(e.to_string()))?;
    write!(out, "{report}")?;
    match report.first_mismatch() {
        None => Ok(()),
        Some(m) => Err(Failure::Mismatch(m.to_string())),
    }
}
