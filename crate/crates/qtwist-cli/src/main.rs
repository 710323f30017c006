use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qtwist_cli::{error_report, execute, parse_input, CliError};

/// Exact verification jobs for multiparameter quantum groups and their cocycle deformations.
#[derive(Parser, Debug)]
#[command(name = "qtwist", version)]
struct Args {
    /// validate, present, serre, twist-to-dj, verify-iso, quotient-dj,
    /// halfroot-cocycle, rack-check, nichols-hilbert, hq-deform or compose-twist
    command: String,
    #[arg(long)]
    input: PathBuf,
    /// Filtration bound D, or the top degree for nichols-hilbert
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn emit(text: &str, output: Option<&PathBuf>) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let job = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.input.display())))
        .and_then(|text| parse_input(&args.command, &text, args.max_degree));
    let (text, code) = match job {
        Ok(job) => {
            let report = execute(&job);
            (serde_json::to_string_pretty(&report).expect("report serializes"), report.exit_code())
        }
        Err(e) => {
            eprintln!("qtwist: {e}");
            (serde_json::to_string_pretty(&error_report(&args.command, &e)).expect("report serializes"), 2)
        }
    };
    if let Err(e) = emit(&text, args.output.as_ref()) {
        eprintln!("qtwist: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
