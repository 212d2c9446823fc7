use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use secohom_cli::error::{exit, CliError};
use secohom_cli::run::{execute, render_table, Command, Overrides};
use secohom_core::Field;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Cohomology,
    Hochschild,
    DeformCheck,
    DeformExtend,
    DeformObstruction,
    DeformGauge,
    SimplicialVerify,
    CyclicVerify,
    Validate,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Cohomology => Command::Cohomology,
            Cmd::Hochschild => Command::Hochschild,
            Cmd::DeformCheck => Command::DeformCheck,
            Cmd::DeformExtend => Command::DeformExtend,
            Cmd::DeformObstruction => Command::DeformObstruction,
            Cmd::DeformGauge => Command::DeformGauge,
            Cmd::SimplicialVerify => Command::SimplicialVerify,
            Cmd::CyclicVerify => Command::CyclicVerify,
            Cmd::Validate => Command::Validate,
        }
    }
}

/// Secondary Hochschild cohomology, deformations and cyclic identities.
#[derive(Debug, Parser)]
#[command(name = "secohom", version)]
struct Args {
    command: Cmd,
    /// Problem file.
    file: PathBuf,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    /// `rationals` or `fp:P`.
    #[arg(long)]
    field: Option<Field>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: Args) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(&args.file).map_err(|e| CliError::Io(format!("{}: {e}", args.file.display())))?;
    let input = args.file.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let overrides =
        Overrides { degree: args.degree, order: args.order, nmax: args.nmax, field: args.field, seed: args.seed };
    let outcome = execute(args.command.into(), &text, &input, &overrides)?;
    print!("{}", render_table(&outcome.report));
    if let Some(path) = &args.out {
        write_report(path, &outcome.report.to_json())?;
    }
    Ok(outcome.exit_code)
}

fn write_report(path: &Path, json: &str) -> Result<(), CliError> {
    std::fs::write(path, json).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::PARSE } else { exit::PASS });
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
