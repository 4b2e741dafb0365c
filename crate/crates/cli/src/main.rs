use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use engine::files::{ProgramFile, QcaConfig};
use engine::processor::{approximate_angle, DEFAULT_DTAU, DEFAULT_MAX_STEPS};
use engine::verify::{run_suite, to_json_lines, Suite};
use engine::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "ctrlshift",
    version,
    about = "Control-Shift processor and QCA simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a program file on the processor.
    Run {
        file: PathBuf,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allowed deviation of the initial state's norm from 1.
        #[arg(long, value_parser = positive)]
        tol: Option<f64>,
    },
    /// Run the built-in verification checks and print JSON lines.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replaces the tolerance of every upper-bound check.
        #[arg(long, value_parser = positive)]
        tol: Option<f64>,
    },
    /// Evolve a QCA configuration.
    Qca { config: PathBuf },
    /// Smallest m with m·dtau within eps of theta (mod 2π).
    Approx {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = DEFAULT_DTAU, allow_hyphen_values = true)]
        dtau: f64,
        #[arg(long, value_parser = positive)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure with exit code and message.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Contract(_) | Error::Numerical(_) | Error::Structure { .. } => EXIT_FAILURE,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_line<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes") + "\n"
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run { file, out, tol } => {
            let prog: ProgramFile = read_json(&file)?;
            let result = match tol {
                Some(t) => prog.run_with_tol(t)?,
                None => prog.run()?,
            };
            emit(&to_line(&result), out.as_deref())?;
            if !result.program_restored {
                return Err(Failure(
                    EXIT_FAILURE,
                    "program register was not restored".into(),
                ));
            }
        }
        Command::Verify { suite, seed, tol } => {
            let records = run_suite(suite, seed, tol);
            emit(&to_json_lines(&records), None)?;
            let failed = records.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                return Err(Failure(EXIT_FAILURE, format!("{failed} check(s) failed")));
            }
        }
        Command::Qca { config } => {
            let cfg: QcaConfig = read_json(&config)?;
            emit(&to_line(&cfg.run()?), None)?;
        }
        Command::Approx {
            theta,
            dtau,
            eps,
            max_steps,
        } => {
            let a = approximate_angle(theta, dtau, eps, max_steps)?;
            emit(&to_line(&a), None)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("ctrlshift: {msg}");
            ExitCode::from(code)
        }
    }
}
