//! nonassoc-lab: build algebras from spec files, run the identity and
//! assumption checkers, compute spectral resolutions and compatibility
//! profiles, and emit deterministic, replayable JSON reports.
//!
//! Exit codes: 0 = expectations met, 1 = a check failed, 2 = input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

mod run;

use run::{execute, expectations_satisfied, CliError, Report, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "nonassoc-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// RNG seed; falls back to NONASSOC_LAB_SEED, then a fixed default.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance for float-scalar comparisons (exact checks ignore it).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Sample count for sampled checks.
    #[arg(long, global = true, default_value_t = 64)]
    trials: usize,
    /// Expected result entries, as key=value; exit 0 iff all match.
    #[arg(long = "expect", global = true, value_parser = parse_expect)]
    expect: Vec<(String, String)>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_expect(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected key=value, got \"{s}\""))
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra from a spec and print its summary.
    Build {
        /// Algebra spec: inline JSON or a path to a JSON file.
        #[arg(long)]
        spec: String,
    },
    /// Run the identity checkers (power-associativity, Jordan, associativity,
    /// formal-reality sampling) on an algebra.
    Identities {
        #[arg(long)]
        spec: String,
        /// Jordan identity mode.
        #[arg(long, value_enum, default_value_t = JordanModeArg::Linearized)]
        mode: JordanModeArg,
    },
    /// Verify the order-unit assumptions (iv)-(viii) with auto-generated or
    /// supplied events.
    CheckAssumptions {
        #[arg(long)]
        spec: String,
        /// Optional JSON file: {"events": [<element spec>, ...]}.
        #[arg(long)]
        events: Option<String>,
        /// How many auto events to generate when none are supplied.
        #[arg(long, default_value_t = 6)]
        event_count: usize,
    },
    /// Eleven-condition compatibility profile of an event pair (or, in
    /// batch mode, a list of pairs).
    Compat {
        #[arg(long)]
        spec: String,
        /// Element spec of the first event.
        #[arg(long, required_unless_present = "pairs", conflicts_with = "pairs")]
        e: Option<String>,
        /// Element spec of the second event.
        #[arg(long, required_unless_present = "pairs", conflicts_with = "pairs")]
        f: Option<String>,
        /// Batch mode: JSON {"pairs": [{"e": <element>, "f": <element>}, ...]}.
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Spectral resolution of an element.
    Spectral {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        element: String,
    },
    /// Generate an exact certificate.
    Certify {
        #[command(subcommand)]
        kind: CertifyCommand,
    },
    /// Re-run a stored report and compare results.
    Replay { report: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum JordanModeArg {
    Sampled,
    Linearized,
}

#[derive(Subcommand)]
enum CertifyCommand {
    /// Golden-ratio idempotent breaking positivity of U_e (needs α*α = −1).
    Golden {
        #[arg(long)]
        ring: String,
        /// Ring element as a JSON array of rationals; searched when omitted.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Nilpotent off-diagonal direction violating the order unit.
    Nilpotent {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// H_3 derivation forcing alternative coefficients.
    Alternativity {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
    },
    /// H_4 derivation forcing associative coefficients.
    Associativity {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// 1* = 1 and j* = −j for the square-root-of-−1 basis units.
    Conjugation {
        #[arg(long)]
        ring: String,
    },
    /// Coefficient-ring screening verdict for H_n(R).
    Screen {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
    },
    /// Exact Jordan-identity failure witness in H_4(octonions).
    H4oJordan {
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
}

const DEFAULT_SEED: u64 = 1729;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.or_else(env_seed).unwrap_or(DEFAULT_SEED);
    match dispatch(&cli, seed) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("NONASSOC_LAB_SEED").ok().and_then(|s| s.parse().ok())
}

fn dispatch(cli: &Cli, seed: u64) -> Result<ExitCode, CliError> {
    let (kind, input) = command_input(&cli.command)?;
    if let Command::Replay { report } = &cli.command {
        return replay(report, cli);
    }
    let result = execute(&kind, &input, seed, cli.tol, cli.trials)?;
    let report = Report {
        schema: SCHEMA_VERSION,
        kind: kind.clone(),
        seed,
        tol: cli.tol,
        trials: cli.trials,
        input,
        result,
    };
    emit(&report, cli.format);
    let ok = run::default_success(&report.kind, &report.result)
        && expectations_satisfied(&report.result, &cli.expect);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn command_input(cmd: &Command) -> Result<(String, Value), CliError> {
    let spec_value = |s: &str| -> Result<Value, CliError> {
        let text = run::read_spec_text(s)?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("spec parse: {e}")))
    };
    Ok(match cmd {
        Command::Build { spec } => ("build".into(), serde_json::json!({ "algebra": spec_value(spec)? })),
        Command::Identities { spec, mode } => (
            "identities".into(),
            serde_json::json!({
                "algebra": spec_value(spec)?,
                "mode": match mode { JordanModeArg::Sampled => "sampled", JordanModeArg::Linearized => "linearized" },
            }),
        ),
        Command::CheckAssumptions { spec, events, event_count } => (
            "check-assumptions".into(),
            serde_json::json!({
                "algebra": spec_value(spec)?,
                "events": match events { Some(e) => Some(spec_value(e)?), None => None::<Value> },
                "event_count": event_count,
            }),
        ),
        Command::Compat { spec, e, f, pairs } => match (e, f, pairs) {
            (Some(e), Some(f), None) => (
                "compat".into(),
                serde_json::json!({
                    "algebra": spec_value(spec)?,
                    "e": spec_value(e)?,
                    "f": spec_value(f)?,
                }),
            ),
            (_, _, Some(pairs)) => (
                "compat-batch".into(),
                serde_json::json!({
                    "algebra": spec_value(spec)?,
                    "pairs": spec_value(pairs)?,
                }),
            ),
            _ => return Err(CliError::Input("compat needs --e/--f or --pairs".into())),
        },
        Command::Spectral { spec, element } => (
            "spectral".into(),
            serde_json::json!({
                "algebra": spec_value(spec)?,
                "element": spec_value(element)?,
            }),
        ),
        Command::Certify { kind } => certify_input(kind)?,
        Command::Replay { .. } => ("replay".into(), Value::Null),
    })
}

fn certify_input(kind: &CertifyCommand) -> Result<(String, Value), CliError> {
    let ring_value = |s: &str| -> Result<Value, CliError> {
        if s.trim_start().starts_with('{') {
            serde_json::from_str(s).map_err(|e| CliError::Input(format!("ring spec parse: {e}")))
        } else {
            Ok(serde_json::json!({ "name": s }))
        }
    };
    let elem_value = |s: &Option<String>| -> Result<Value, CliError> {
        match s {
            None => Ok(Value::Null),
            Some(text) => serde_json::from_str(text)
                .map_err(|e| CliError::Input(format!("ring element parse: {e}"))),
        }
    };
    Ok(match kind {
        CertifyCommand::Golden { ring, alpha } => (
            "certify-golden".into(),
            serde_json::json!({ "ring": ring_value(ring)?, "alpha": elem_value(alpha)? }),
        ),
        CertifyCommand::Nilpotent { ring, alpha } => (
            "certify-nilpotent".into(),
            serde_json::json!({ "ring": ring_value(ring)?, "alpha": elem_value(alpha)? }),
        ),
        CertifyCommand::Alternativity { ring, alpha, beta } => (
            "certify-alternativity".into(),
            serde_json::json!({
                "ring": ring_value(ring)?,
                "alpha": elem_value(alpha)?,
                "beta": elem_value(beta)?,
            }),
        ),
        CertifyCommand::Associativity { ring, alpha, beta, gamma } => (
            "certify-associativity".into(),
            serde_json::json!({
                "ring": ring_value(ring)?,
                "alpha": elem_value(alpha)?,
                "beta": elem_value(beta)?,
                "gamma": elem_value(gamma)?,
            }),
        ),
        CertifyCommand::Conjugation { ring } => (
            "certify-conjugation".into(),
            serde_json::json!({ "ring": ring_value(ring)? }),
        ),
        CertifyCommand::Screen { ring, n } => (
            "screen".into(),
            serde_json::json!({ "ring": ring_value(ring)?, "n": n }),
        ),
        CertifyCommand::H4oJordan { budget } => (
            "h4o-jordan".into(),
            serde_json::json!({ "budget": budget }),
        ),
    })
}

fn replay(path: &PathBuf, cli: &Cli) -> Result<ExitCode, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read report: {e}")))?;
    let stored: Report =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("report parse: {e}")))?;
    if stored.schema != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "unsupported schema {} (this build writes {})",
            stored.schema, SCHEMA_VERSION
        )));
    }
    let fresh = execute(&stored.kind, &stored.input, stored.seed, stored.tol, stored.trials)?;
    let matches = fresh == stored.result;
    let verdict = serde_json::json!({
        "kind": stored.kind,
        "match": matches,
    });
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&verdict).unwrap()),
        Format::Text => println!("replay {}: {}", stored.kind, if matches { "match" } else { "MISMATCH" }),
    }
    Ok(if matches { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Text => {
            println!("# {} (seed {}, tol {:e}, trials {})", report.kind, report.seed, report.tol, report.trials);
            println!("{}", run::render_text(&report.kind, &report.result));
        }
    }
}
