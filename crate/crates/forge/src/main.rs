use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use forge::commands::{self, EvalRequest, ReportFormat, ReportRequest};
use forge::CliError;

/// Build, extend, evaluate and verify certified entire-function artifacts.
#[derive(Parser)]
#[command(name = "forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an artifact from a JSON config.
    Build {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Continue an artifact's construction to a larger depth.
    Extend {
        artifact: PathBuf,
        #[arg(long)]
        depth: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Enclose f^(s)(z) with a certified radius.
    Eval {
        artifact: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 0)]
        s: u64,
        #[arg(long, default_value = "1/1000000", allow_hyphen_values = true)]
        width: String,
        /// Sum only the first N coefficients.
        #[arg(long)]
        terms: Option<u64>,
    },
    /// Recompute every record and certificate of an artifact.
    Verify { artifact: PathBuf },
    /// Build from an exceptional-set config and report algebraicity per (point, order).
    Report {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Tsv)]
        format: ReportFormat,
        /// Also write the built artifact here.
        #[arg(long)]
        artifact: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    match cli.command {
        Command::Build { config, out: path } => commands::cmd_build(&config, &path, &mut out),
        Command::Extend { artifact, depth, out: path } => commands::cmd_extend(&artifact, depth, &path, &mut out),
        Command::Eval { artifact, z, s, width, terms } => {
            let req = EvalRequest { z: &z, order: s, width: &width, terms };
            commands::cmd_eval(&artifact, &req, &mut out, &mut err)
        }
        Command::Verify { artifact } => commands::cmd_verify(&artifact, &mut out),
        Command::Report { config, out: path, format, artifact } => {
            let req = ReportRequest { config: &config, out: &path, format, artifact: artifact.as_deref() };
            commands::cmd_report(&req, &mut out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
