use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{benchmark_state, family_state, Benchmark, Family, FamilySpec};
use crate::lab::{random_scan, sweep, ParamRange, Quantity, SweepConfig, SweepTarget};
use crate::measures::{v1234, MeasureReport};
use crate::selftest::{self, CheckStatus};
use crate::state::{parse_state, StateDocument};
use crate::tetra::TetraStatus;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDING: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (discrepancy ledger v1)");

#[derive(Debug, Parser)]
#[command(name = "tetra-gme", version = VERSION, about = "Four-qubit concurrence tetrahedron toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report for a state read from a JSON file.
    Analyze {
        #[arg(long)]
        state: PathBuf,
        /// Single-line JSON instead of pretty-printed.
        #[arg(long)]
        json: bool,
    },
    /// State and report for one member of a family.
    Family {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        params: FixedParams,
    },
    /// Report for a named benchmark state.
    Benchmark {
        #[arg(long)]
        name: Benchmark,
    },
    /// Evaluate a quantity over a parameter grid and write CSV.
    Sweep {
        #[arg(
            long,
            conflicts_with = "benchmark",
            required_unless_present = "benchmark"
        )]
        family: Option<Family>,
        #[arg(long)]
        benchmark: Option<Benchmark>,
        #[command(flatten)]
        ranges: RangeParams,
        #[arg(long, default_value = "volume")]
        quantity: Quantity,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Haar-random scan of the inequalities and realizability.
    Random {
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Built-in regression checks.
    Selftest,
}

#[derive(Debug, Args)]
struct FixedParams {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
}

#[derive(Debug, Args)]
struct RangeParams {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<ParamRange>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<ParamRange>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<ParamRange>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<ParamRange>,
}

/// Leading parameters in `a, b, c, d` order; a gap (e.g. `--b` without `--a`)
/// is an error.
fn ordered<T: Copy>(slots: [Option<T>; 4]) -> Result<Vec<T>> {
    let n = slots.iter().take_while(|s| s.is_some()).count();
    if slots[n..].iter().any(Option::is_some) {
        return Err(Error::InvalidSweep(
            "parameters must be given in order a, b, c, d".into(),
        ));
    }
    Ok(slots[..n].iter().map(|s| s.unwrap()).collect())
}

#[derive(Serialize)]
struct FamilyOutput<'a> {
    spec: &'a FamilySpec,
    state: StateDocument,
    direct_norm_factor: f64,
    printed_norm_factor: f64,
    report: &'a MeasureReport,
}

/// Parses `args` (including the program name) and runs the command. Data goes
/// to `out`, diagnostics to `err`; the return value is the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut buf = Vec::new();
    let code = match execute(cli.command, &mut buf, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::Io(_) => EXIT_FINDING,
                _ => EXIT_USAGE,
            };
        }
    };
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_FINDING;
    }
    code
}

fn report_code(report: &MeasureReport) -> i32 {
    if report.is_finding() {
        EXIT_FINDING
    } else {
        EXIT_OK
    }
}

fn execute(command: Command, out: &mut Vec<u8>, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze { state, json } => {
            let text = std::fs::read_to_string(&state)
                .map_err(|e| Error::Malformed(format!("{}: {e}", state.display())))?;
            let parsed = parse_state(&text)?;
            if (parsed.norm_factor - 1.0).abs() > 1e-12 {
                let _ = writeln!(
                    err,
                    "note: input renormalized by factor {}",
                    parsed.norm_factor
                );
            }
            let report = v1234(&parsed.state)?;
            let text = if json {
                serde_json::to_string(&report).expect("report serializes")
            } else {
                report.to_json()
            };
            writeln!(out, "{text}")?;
            Ok(report_code(&report))
        }
        Command::Family { family, params } => {
            let values = ordered([params.a, params.b, params.c, params.d])?;
            let spec = FamilySpec::new(family, &values)?;
            let fs = family_state(&spec)?;
            if fs.norm_mismatch() > 1e-12 {
                let _ = writeln!(
                    err,
                    "note: printed prefactor {} differs from 1/|psi| = {}",
                    fs.printed_norm_factor, fs.direct_norm_factor
                );
            }
            let report = v1234(&fs.state)?;
            let doc = FamilyOutput {
                spec: &spec,
                state: fs.state.to_document(),
                direct_norm_factor: fs.direct_norm_factor,
                printed_norm_factor: fs.printed_norm_factor,
                report: &report,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializes")
            )?;
            Ok(report_code(&report))
        }
        Command::Benchmark { name } => {
            let report = v1234(&benchmark_state(name))?;
            writeln!(out, "{}", report.to_json())?;
            Ok(report_code(&report))
        }
        Command::Sweep {
            family,
            benchmark,
            ranges,
            quantity,
            out: path,
        } => {
            let target = match (family, benchmark) {
                (Some(f), None) => SweepTarget::Family(f),
                (None, Some(b)) => SweepTarget::Benchmark(b),
                _ => {
                    return Err(Error::InvalidSweep(
                        "give exactly one of --family, --benchmark".into(),
                    ))
                }
            };
            let config = SweepConfig {
                target,
                ranges: ordered([ranges.a, ranges.b, ranges.c, ranges.d])?,
                quantity,
            };
            let result = sweep(&config)?;
            match path {
                Some(p) => {
                    let file = File::create(&p)?;
                    result.write_csv(BufWriter::new(file))?;
                }
                None => result.write_csv(&mut *out)?,
            }
            let infeasible = result
                .table()
                .map(|t| t.rows.iter().any(|r| r.status == TetraStatus::Infeasible))
                .unwrap_or(false);
            Ok(if infeasible { EXIT_FINDING } else { EXIT_OK })
        }
        Command::Random { count, seed } => {
            let report = random_scan(count, seed)?;
            writeln!(out, "{}", report.to_json())?;
            Ok(if report.counterexamples.is_empty() {
                EXIT_OK
            } else {
                EXIT_FINDING
            })
        }
        Command::Selftest => {
            let checks = selftest::run_checks()?;
            selftest::write_csv(&checks, &mut *out)?;
            Ok(if checks.iter().any(|c| c.status == CheckStatus::Fail) {
                EXIT_FINDING
            } else {
                EXIT_OK
            })
        }
    }
}
