use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tropeig_cli::{exit_code, render_text, run, CliError, Options, ProblemFile, Task, DEFAULT_MAX_DIM};

/// Max-times eigencones, one-sided systems and interval deciders.
///
/// Exit codes: 0 decided, 2 inconclusive, 1 input error.
#[derive(Parser, Debug)]
#[command(name = "tropeig", version)]
struct Args {
    /// What to compute.
    #[arg(value_enum)]
    task: Task,
    /// Problem file (JSON).
    #[arg(short = 'f', long = "file")]
    file: PathBuf,
    /// Print the full verdict as JSON.
    #[arg(long)]
    json: bool,
    /// Relative tolerance, applied in the log domain.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Seed for all sampling.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Cap on enumerated minimal coverings.
    #[arg(long, default_value_t = 1_000_000)]
    max_coverings: usize,
    /// Orbit length for attraction tests.
    #[arg(long, default_value_t = 200)]
    orbit_steps: usize,
    /// Print every evaluated condition in text mode.
    #[arg(long)]
    certificate: bool,
}

fn execute(args: &Args) -> Result<(String, u8), CliError> {
    let path = args.file.display().to_string();
    let text = std::fs::read_to_string(&args.file).map_err(|e| CliError::Io {
        path,
        message: e.to_string(),
    })?;
    let problem = ProblemFile::parse(&text)?;
    let opts = Options {
        tolerance: args.tolerance,
        seed: args.seed,
        max_coverings: args.max_coverings,
        orbit_steps: args.orbit_steps,
        max_dim: DEFAULT_MAX_DIM,
    };
    let verdict = run(args.task, &problem, &opts)?;
    let out = if args.json {
        let mut s = serde_json::to_string_pretty(&verdict).expect("verdicts always serialize");
        s.push('\n');
        s
    } else {
        render_text(args.task, &verdict, &opts, args.certificate)
    };
    Ok((out, exit_code(&verdict)))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&args) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
