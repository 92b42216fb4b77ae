use std::io::Write;
use std::process::ExitCode;

use apery8_cli::{cmd_show, cmd_verify, RunConfig, ShowWhat, Suite};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "apery8",
    version,
    about = "Verify the level-8 Apéry limit and its continued fraction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report pass/fail per check.
    Verify {
        /// q-series truncation order (at least 8).
        #[arg(long, default_value_t = 200)]
        order: i64,
        /// Working precision in decimal digits (at least 20).
        #[arg(long, default_value_t = 50)]
        prec: u32,
        /// Sequence and continuant depth (at least 10).
        #[arg(long = "nmax", default_value_t = 300)]
        n_max: usize,
        /// Suite to run; repeat to select several. Defaults to all.
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        /// Additional seeded random sample points for the Fricke checks.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        seed: u64,
        /// Emit the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print q-expansions, sequence tables, ratio traces or constants.
    Show {
        #[arg(value_enum)]
        what: ShowKind,
        /// Selector-specific arguments, see the README.
        args: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShowKind {
    Qexp,
    Sequence,
    Ratio,
    Constants,
}

fn parse_arg<T: std::str::FromStr>(args: &[String], i: usize, default: T) -> Result<T, String> {
    match args.get(i) {
        None => Ok(default),
        Some(a) => a
            .parse()
            .map_err(|_| format!("cannot parse argument '{a}'")),
    }
}

fn show_what(kind: ShowKind, args: &[String]) -> Result<ShowWhat, String> {
    let max_args = match kind {
        ShowKind::Qexp | ShowKind::Ratio => 2,
        ShowKind::Sequence | ShowKind::Constants => 1,
    };
    if args.len() > max_args {
        return Err(format!("too many arguments: {}", args.join(" ")));
    }
    Ok(match kind {
        ShowKind::Qexp => ShowWhat::QExp {
            series: args.first().cloned().unwrap_or_else(|| "t".into()),
            order: parse_arg(args, 1, 10)?,
        },
        ShowKind::Sequence => ShowWhat::Sequence {
            n: parse_arg(args, 0, 10)?,
        },
        ShowKind::Ratio => ShowWhat::Ratio {
            n: parse_arg(args, 0, 20)?,
            digits: parse_arg(args, 1, 30)?,
        },
        ShowKind::Constants => ShowWhat::Constants {
            digits: parse_arg(args, 0, 30)?,
        },
    })
}

/// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            order,
            prec,
            n_max,
            suites,
            samples,
            seed,
            json,
        } => {
            let cfg = RunConfig {
                order,
                prec,
                n_max,
                suites,
                random_samples: samples,
                seed,
            };
            let report = match cmd_verify(&cfg) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            if json {
                emit(&(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"));
            } else {
                emit(&report.to_text());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Show { what, args, json } => {
            let sel = match show_what(what, &args) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            match cmd_show(&sel) {
                Ok(out) if json => {
                    emit(&(serde_json::to_string_pretty(&out).expect("output serializes") + "\n"));
                    ExitCode::SUCCESS
                }
                Ok(out) => {
                    emit(&out.to_text());
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
    }
}
