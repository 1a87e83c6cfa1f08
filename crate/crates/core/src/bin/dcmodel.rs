use std::io::stdout;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dcmodel::cli::{
    emit_report, generate_demo, render_json, run_full_suite, run_validate, DemoKind, Format,
    SuiteOptions, VerificationReport,
};
use dcmodel::error::{Error, Result};
use dcmodel::matrixcore::ToleranceConfig;

/// Exit code for unreadable or malformed input.
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    version,
    about = "Dilation and analytic model checks for doubly commuting contractions"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check contractivity, commutation, double commutation and purity.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        check_tol: f64,
    },
    /// Run every check on a tuple file.
    Suite {
        file: PathBuf,
        /// Truncation degree per variable, or `adaptive`.
        #[arg(long, default_value = "adaptive")]
        degree: String,
        #[arg(long, default_value_t = 1e-6)]
        tail_tol: f64,
        #[arg(long, default_value_t = 1e-9)]
        check_tol: f64,
        #[arg(long, default_value_t = 64)]
        boundary_samples: usize,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print wall time in text output.
        #[arg(long)]
        timing: bool,
    },
    /// Write a generated demo tuple.
    Demo {
        #[arg(value_enum)]
        kind: DemoKind,
        #[arg(long, value_delimiter = ',', default_value = "2,2")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn tolerances(tail_tol: f64, check_tol: f64) -> Result<ToleranceConfig> {
    let cfg = ToleranceConfig {
        tail_tol,
        check_tol,
        ..ToleranceConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn parse_degree(text: &str) -> Result<Option<usize>> {
    if text == "adaptive" {
        return Ok(None);
    }
    text.parse().map(Some).map_err(|_| {
        Error::InvalidInput(format!(
            "--degree expects a number or `adaptive`, got {text}"
        ))
    })
}

fn print(report: &VerificationReport, format: Format) -> Result<u8> {
    emit_report(report, format, &mut stdout())?;
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { file, check_tol } => {
            let cfg = tolerances(ToleranceConfig::default().tail_tol, check_tol)?;
            print(&run_validate(&file, &cfg)?, cli.format)
        }
        Command::Suite {
            file,
            degree,
            tail_tol,
            check_tol,
            boundary_samples,
            report,
            timing,
        } => {
            let opts = SuiteOptions {
                degree: parse_degree(&degree)?,
                cfg: tolerances(tail_tol, check_tol)?,
                boundary_samples,
                ..SuiteOptions::default()
            };
            let mut result = run_full_suite(&file, &opts)?;
            if let Some(path) = report {
                std::fs::write(path, render_json(&result))?;
            }
            if !timing {
                result.elapsed = None;
            }
            print(&result, cli.format)
        }
        Command::Demo {
            kind,
            dims,
            radius,
            seed,
            out,
        } => {
            generate_demo(kind, &dims, radius, seed)?.save(&out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
