//! `jacquet`: compute composition series and Jacquet-module expansions of
//! representations induced from ladder and cuspidal data.
//!
//! Exit codes: 0 success (and all checks pass under `verify`), 2 invalid
//! input, 3 internal consistency failure or failed verification.

mod instance_file;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use jacquet_core::verify::{
    check_decomposition, check_mstar_oracle, check_twisted_mstar_multiplicative,
    multiplicativity_pairs, oracle_ladders, CheckReport, GridSpec,
};
use jacquet_core::{
    canonical_json, mstar_ladder, mu_star_induced, Error as CoreError, HalfInt, Style,
};

use instance_file::load_instance;

#[derive(Parser)]
#[command(
    name = "jacquet",
    version,
    about = "Composition series of representations induced from ladder and cuspidal data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full composition series of the induced representation.
    Decompose(InputArgs),
    /// List the Jacquet-module terms of the induced representation, one per
    /// ordered cut pair.
    Mustar(InputArgs),
    /// Expand the Jacquet modules of the ladder on the general-linear side.
    Mstar(InputArgs),
    /// Report reducibility and the expected composition length.
    ReduceTest(InputArgs),
    /// Run the exhaustive small-instance verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Path to the instance JSON file.
    path: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use unicode math symbols in text output.
    #[arg(long)]
    unicode: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest number of ladder segments in the instance grid; also caps the
    /// expansion-oracle ladder size.
    #[arg(long, default_value_t = 3)]
    max_t: usize,
    /// Largest endpoint exponent in the instance grid, e.g. "9/2" or "4".
    #[arg(long, default_value = "9/2")]
    max_exponent: HalfInt,
    /// Write the JSON-lines reports to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

enum CliError {
    /// Invalid input: exit 2.
    Input(String),
    /// Internal consistency failure or failed verification: exit 3.
    Internal(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose(args) => cmd_decompose(&args),
        Command::Mustar(args) => cmd_mustar(&args),
        Command::Mstar(args) => cmd_mstar(&args),
        Command::ReduceTest(args) => cmd_reduce_test(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn verbose() -> bool {
    std::env::var("JACQUET_LOG").map(|v| !v.is_empty() && v != "0").unwrap_or(false)
}

fn style(args: &InputArgs) -> Style {
    if args.unicode {
        Style::unicode()
    } else {
        Style::ascii()
    }
}

fn emit(out: &Option<PathBuf>, content: String) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_decompose(args: &InputArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.path).map_err(CliError::Input)?;
    let decomposition = inst.decompose()?;
    let content = match args.format {
        OutputFormat::Json => canonical_json(&decomposition) + "\n",
        OutputFormat::Text => style(args).decomposition(&decomposition) + "\n",
    };
    emit(&args.out, content)
}

fn cmd_mustar(args: &InputArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.path).map_err(CliError::Input)?;
    let terms = mu_star_induced(inst.ladder(), inst.base());
    let content = match args.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Output<'a> {
                count: usize,
                terms: &'a [jacquet_core::MuStarTerm],
            }
            canonical_json(&Output { count: terms.len(), terms: &terms }) + "\n"
        }
        OutputFormat::Text => {
            let st = style(args);
            let mut lines = vec![format!("count: {}", terms.len())];
            lines.extend(terms.iter().map(|t| st.mu_star_term(t)));
            lines.join("\n") + "\n"
        }
    };
    emit(&args.out, content)
}

fn cmd_mstar(args: &InputArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.path).map_err(CliError::Input)?;
    let expansion = mstar_ladder(inst.ladder());
    let content = match args.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Output<'a> {
                count: usize,
                terms: &'a jacquet_core::GLPairVirtual,
            }
            canonical_json(&Output { count: expansion.len(), terms: &expansion }) + "\n"
        }
        OutputFormat::Text => {
            let st = style(args);
            let mut lines = vec![format!("count: {}", expansion.len())];
            lines.extend(
                expansion
                    .terms()
                    .map(|(l, r, c)| format!("{c} * {} (x) {}", st.gl_label(l), st.gl_label(r))),
            );
            lines.join("\n") + "\n"
        }
    };
    emit(&args.out, content)
}

fn cmd_reduce_test(args: &InputArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.path).map_err(CliError::Input)?;
    let content = match args.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Output {
                reducible: bool,
                expected_length: usize,
            }
            canonical_json(&Output {
                reducible: inst.is_reducible(),
                expected_length: inst.expected_length(),
            }) + "\n"
        }
        OutputFormat::Text => format!(
            "reducible: {}\nexpected_length: {}\n",
            inst.is_reducible(),
            inst.expected_length()
        ),
    };
    emit(&args.out, content)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let grid = GridSpec {
        max_t: args.max_t,
        max_exponent: args.max_exponent,
        ..GridSpec::full()
    };
    let mut reports: Vec<CheckReport> = Vec::new();

    let ladders = oracle_ladders(grid.max_t);
    if verbose() {
        eprintln!("verify: expansion oracle on {} ladders", ladders.len());
    }
    reports.extend(ladders.iter().map(check_mstar_oracle));

    let pairs = multiplicativity_pairs();
    if verbose() {
        eprintln!("verify: multiplicativity on {} label pairs", pairs.len());
    }
    reports.extend(pairs.iter().map(|(a, b)| check_twisted_mstar_multiplicative(a, b)));

    let instances = grid.instances();
    if verbose() {
        eprintln!("verify: decomposition audit on {} instances", instances.len());
    }
    reports.extend(instances.iter().map(check_decomposition));

    if args.inject_fault {
        reports.push(CheckReport {
            instance: "synthetic".into(),
            check: "injected_fault".into(),
            pass: false,
            detail: Some("fault injected for harness testing".into()),
        });
    }

    let mut lines = String::new();
    for report in &reports {
        lines.push_str(&serde_json::to_string(report).expect("report serializes"));
        lines.push('\n');
    }
    emit(&args.out, lines)?;

    let failed = reports.iter().filter(|r| !r.pass).count();
    let passed = reports.len() - failed;
    eprintln!("verify: {passed} passed, {failed} failed");
    if failed > 0 {
        return Err(CliError::Internal(format!("{failed} checks failed")));
    }
    Ok(())
}
