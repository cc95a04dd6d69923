//! Batch CLI over the `ranplan` library: plan documents in, reports out.
//!
//! Exit codes: 0 when every check passed, 2 when the analysis ran but a
//! check failed, 1 when the input could not be processed at all.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ranplan::addressing::{decode_string, pack_32, unpack_32, GnbId, PackedGnbId};
use ranplan::pipeline::{run_plan, sha256_hex, RunOptions};
use ranplan::plan::{parse_plan, schema_json, PlanDocument};
use ranplan::report::{write_csv_sections, ReportDocument};
use ranplan::Verdict;
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(
    name = "ranplan",
    version,
    about = "Planning and validation toolkit for virtualized RAN deployments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a plan document end to end and emit the full report.
    Plan(AnalysisArgs),
    /// Run only the slice power-allocation problems of a plan.
    Slice(AnalysisArgs),
    /// Run only the governance screens of a plan.
    Govern(AnalysisArgs),
    /// Build a gNB identifier from its market / vCU / vDU fields.
    EncodeId {
        #[arg(long)]
        market: u32,
        #[arg(long)]
        vcu: u32,
        #[arg(long)]
        vdu: u32,
        /// Write the record here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Split a gNB identifier into its fields.
    DecodeId {
        /// 11-digit decimal identifier, or a 32-bit packed value with
        /// `--packed`.
        id: String,
        /// Interpret the argument as a packed value (decimal or 0x-hex).
        #[arg(long)]
        packed: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pack an 11-digit gNB identifier into its 32-bit form.
    PackId {
        /// 11-digit decimal identifier.
        id: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the JSON Schema for plan documents.
    Schema {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AnalysisArgs {
    /// Plan document path. Falls back to $RANPLAN_INPUT, then stdin.
    #[arg(long, env = "RANPLAN_INPUT")]
    input: Option<PathBuf>,
    /// Report destination: a file for json, a directory for csv.
    /// json defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit run metadata that varies between runs (the generation
    /// timestamp), so identical inputs produce identical bytes.
    #[arg(long)]
    fixed_seed: bool,
    /// Treat warnings as failures.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// What an analysis subcommand keeps from the parsed plan.
enum Scope {
    Full,
    Slices,
    Governance,
}

/// One identifier in every form the toolkit knows.
#[derive(Serialize)]
struct IdRecord {
    gnb_id: String,
    market: u32,
    vcu: u32,
    vdu: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    packed_decimal: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    packed_hex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    packing_error: Option<String>,
}

impl IdRecord {
    fn new(id: &GnbId) -> Self {
        let (packed_decimal, packed_hex, packing_error) = match pack_32(id) {
            Ok(packed) => (Some(packed.0), Some(packed.hex()), None),
            Err(err) => (None, None, Some(err.to_string())),
        };
        IdRecord {
            gnb_id: id.to_string(),
            market: id.market(),
            vcu: id.vcu(),
            vdu: id.vdu(),
            packed_decimal,
            packed_hex,
            packing_error,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Plan(args) => run_analysis(&args, Scope::Full),
        Command::Slice(args) => run_analysis(&args, Scope::Slices),
        Command::Govern(args) => run_analysis(&args, Scope::Governance),
        Command::EncodeId {
            market,
            vcu,
            vdu,
            output,
        } => {
            let id = GnbId::new(market, vcu, vdu)?;
            emit_json(&IdRecord::new(&id), &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DecodeId { id, packed, output } => {
            let id = if packed {
                unpack_32(PackedGnbId(parse_u32(&id)?))
            } else {
                decode_string(&id)?
            };
            emit_json(&IdRecord::new(&id), &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PackId { id, output } => {
            let id = decode_string(&id)?;
            // Overflow of either packed field is a validation error.
            pack_32(&id)?;
            emit_json(&IdRecord::new(&id), &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Schema { output } => {
            write_text(schema_json(), &output)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_analysis(args: &AnalysisArgs, scope: Scope) -> Result<ExitCode> {
    let (bytes, source) = read_input(&args.input)?;
    let text =
        String::from_utf8(bytes.clone()).with_context(|| format!("{source} is not valid UTF-8"))?;
    let plan = parse_plan(&text).with_context(|| format!("cannot load plan from {source}"))?;
    let plan = match scope {
        Scope::Full => plan,
        Scope::Slices => PlanDocument {
            slices: plan.slices,
            ..PlanDocument::default()
        },
        Scope::Governance => PlanDocument {
            governance: plan.governance,
            ..PlanDocument::default()
        },
    };

    let options = RunOptions {
        strict: args.strict,
        timestamp: (!args.fixed_seed).then(rfc3339_now),
        input_digest: Some(sha256_hex(&bytes)),
    };
    let report = run_plan(&plan, &options)?;
    write_report(&report, args)?;

    eprintln!(
        "{}: {} failure(s), {} warning(s)",
        report.summary.verdict,
        report.summary.failures.len(),
        report.summary.warnings.len()
    );
    Ok(if report.summary.verdict == Verdict::Pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn read_input(input: &Option<PathBuf>) -> Result<(Vec<u8>, String)> {
    match input {
        Some(path) => {
            let bytes =
                std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
            Ok((bytes, path.display().to_string()))
        }
        None => {
            let mut bytes = Vec::new();
            std::io::stdin()
                .read_to_end(&mut bytes)
                .context("cannot read stdin")?;
            Ok((bytes, "stdin".to_string()))
        }
    }
}

fn write_report(report: &ReportDocument, args: &AnalysisArgs) -> Result<()> {
    match args.format {
        Format::Json => write_text(&report.to_json(), &args.output),
        Format::Csv => {
            let Some(dir) = &args.output else {
                bail!("--format csv requires --output <directory>");
            };
            std::fs::create_dir_all(dir)
                .with_context(|| format!("cannot create {}", dir.display()))?;
            let written = write_csv_sections(report, dir)
                .with_context(|| format!("cannot write CSV into {}", dir.display()))?;
            let mut listing = String::new();
            for path in written {
                listing.push_str(&format!("{}\n", path.display()));
            }
            print_stdout(&listing)
        }
    }
}

fn emit_json(value: &impl Serialize, output: &Option<PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(&text, output)
}

fn write_text(text: &str, output: &Option<PathBuf>) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => print_stdout(text),
    }
}

/// Writes to stdout, treating a closed pipe as termination by SIGPIPE
/// (status 141): `ranplan ... | head` must end quietly once the
/// consumer stops reading, not panic. Rust ignores SIGPIPE, so the
/// signal surfaces here as a `BrokenPipe` write error instead.
fn print_stdout(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(err) if err.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(141),
        other => other.context("cannot write to stdout"),
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u32::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.with_context(|| format!("{s:?} is not a 32-bit value"))
}

fn rfc3339_now() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let (year, month, day) = civil_from_days((secs / 86_400) as i64);
    let rem = secs % 86_400;
    format!(
        "{year:04}-{month:02}-{day:02}T{:02}:{:02}:{:02}Z",
        rem / 3_600,
        (rem / 60) % 60,
        rem % 60
    )
}

/// Gregorian date for a day count since 1970-01-01 (days-from-civil
/// inverse, Hinnant's algorithm).
fn civil_from_days(z: i64) -> (i64, u32, u32) {
    let z = z + 719_468;
    let era = if z >= 0 { z } else { z - 146_096 } / 146_097;
    let doe = z - era * 146_097;
    let yoe = (doe - doe / 1_460 + doe / 36_524 - doe / 146_096) / 365;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let day = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let month = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    let year = yoe + era * 400 + i64::from(month <= 2);
    (year, month, day)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn civil_from_days_hits_known_dates() {
        assert_eq!(civil_from_days(0), (1970, 1, 1));
        assert_eq!(civil_from_days(19_723), (2024, 1, 1));
        // 2024 was a leap year.
        assert_eq!(civil_from_days(19_723 + 59), (2024, 2, 29));
        assert_eq!(civil_from_days(19_723 + 60), (2024, 3, 1));
        assert_eq!(civil_from_days(11_016), (2000, 2, 29));
        assert_eq!(civil_from_days(-1), (1969, 12, 31));
    }

    #[test]
    fn packed_values_parse_in_both_radixes() {
        assert_eq!(parse_u32("40969195").unwrap(), 40_969_195);
        assert_eq!(parse_u32("0x027123eb").unwrap(), 40_969_195);
        assert!(parse_u32("notanumber").is_err());
    }
}
