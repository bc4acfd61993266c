use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use polytau::bench;
use polytau::io::{render, Built, Format, ProblemSpec, TauFile};
use polytau::tau_bkp::{q_schur, PartitionExt};
use polytau::verify::{default_checks, run_checks, Check, Subject, VerifyError};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "polytau", version, about = "Exact polynomial tau-functions of the BKP, DKP and MDKP hierarchies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Plain,
    Latex,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Plain => Format::Plain,
            OutFormat::Latex => Format::Latex,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct the tau-function described by a problem spec.
    Tau {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutFormat,
        /// Seed for "random" constants (overrides the spec's seed).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run exact checks on a problem spec or a tau file.
    Verify {
        input: PathBuf,
        /// Comma-separated subset of bkp, mdkp, fermionic, annihilator.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
        /// Seed for "random" constants (overrides the spec's seed).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Time construction and verification over partition sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4,6,8")]
        sizes: Vec<u32>,
    },
    /// Print the Q-Schur polynomial of a strict partition.
    Qschur {
        #[arg(long, value_delimiter = ',')]
        partition: Vec<u32>,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutFormat,
    },
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))
}

fn load_spec(path: &Path) -> Result<ProblemSpec, String> {
    let v = read_json(path)?;
    ProblemSpec::from_json(&v).map_err(|e| format!("{}: spec error at {e}", path.display()))
}

fn render_built(built: &Built, format: Format) -> String {
    match (built, format) {
        (Built::Single { tau, .. }, Format::Json) => {
            TauFile::Single { family: tau.family, tau: tau.poly.clone() }.to_json().to_string()
        }
        (Built::Pair { tau0, tau1, .. }, Format::Json) => {
            TauFile::Pair { tau0: tau0.poly.clone(), tau1: tau1.poly.clone() }.to_json().to_string()
        }
        (Built::Single { tau, .. }, f) => render(&tau.poly, f),
        (Built::Pair { tau0, tau1, .. }, f) => {
            format!("tau0 = {}\ntau1 = {}", render(&tau0.poly, f), render(&tau1.poly, f))
        }
    }
}

fn cmd_tau(path: &Path, format: Format, seed: Option<u64>) -> ExitCode {
    let spec = match load_spec(path) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    match spec.build(seed) {
        Ok(built) => {
            println!("{}", render_built(&built, format));
            ExitCode::SUCCESS
        }
        Err(e) => input_error(format!("{}: spec error at {e}", path.display())),
    }
}

fn cmd_verify(path: &Path, checks: &[Check], seed: Option<u64>) -> ExitCode {
    let doc = match read_json(path) {
        Ok(v) => v,
        Err(e) => return input_error(e),
    };
    let subject: Subject = if TauFile::is_tau_document(&doc) {
        match TauFile::from_json(&doc) {
            Ok(f) => f.into(),
            Err(e) => return input_error(format!("{}: tau file error at {e}", path.display())),
        }
    } else {
        let built = ProblemSpec::from_json(&doc).and_then(|s| s.build(seed));
        match built {
            Ok(b) => b.into(),
            Err(e) => return input_error(format!("{}: spec error at {e}", path.display())),
        }
    };
    let checks = if checks.is_empty() { default_checks(&subject) } else { checks.to_vec() };
    match run_checks(&subject, &checks) {
        Ok(report) => {
            print!("{report}");
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e @ VerifyError::ChecksUnavailable { .. }) | Err(e @ VerifyError::Input(_)) => input_error(e),
    }
}

fn cmd_bench(sizes: &[u32]) -> ExitCode {
    match bench::run(sizes) {
        Ok(rows) => {
            print!("{}", bench::Table(&rows));
            ExitCode::SUCCESS
        }
        Err(e) => input_error(e),
    }
}

fn cmd_qschur(parts: Vec<u32>, format: Format) -> ExitCode {
    if parts.iter().any(|&p| p > 30) || parts.len() > 10 {
        return input_error("partition too large (at most 10 parts, each at most 30)");
    }
    let lambda = match PartitionExt::strict(parts) {
        Ok(l) => l,
        Err(e) => return input_error(e),
    };
    match q_schur(&lambda) {
        Ok(tau) => {
            println!("{}", render(&tau.poly, format));
            ExitCode::SUCCESS
        }
        Err(e) => input_error(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Tau { spec, format, seed } => cmd_tau(&spec, format.into(), seed),
        Command::Verify { input, checks, seed } => cmd_verify(&input, &checks, seed),
        Command::Bench { sizes } => cmd_bench(&sizes),
        Command::Qschur { partition, format } => cmd_qschur(partition, format.into()),
    }
}
