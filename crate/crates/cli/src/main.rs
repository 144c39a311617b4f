//! Single-binary CLI: analyze a phase/kernel spec, verify the predicted
//! growth and decay exponents numerically, or classify a `(p, beta)` pair.
//!
//! Exit codes: 0 analyzed/verified, 1 verification ran but failed, 2 invalid
//! spec, 3 unsupported scale, 4 inconclusive numerics.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use newton_smoothing::rat::parse_rat;
use newton_smoothing::report::{
    run_analyze, run_classify, run_verify_decay, run_verify_sublevel, to_json_pretty, AnalysisSpec,
    RunError,
};

#[derive(Parser)]
#[command(name = "newton-smoothing", version, about = "Newton-polyhedron smoothing exponents for polynomial hypersurface averages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the analysis spec file.
    #[arg(long)]
    spec: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the vanishing order o(S).
    #[arg(long = "override-o")]
    override_o: Option<u32>,
}

#[derive(Args)]
struct OracleArgs {
    /// Override the oracle seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the evaluation budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the CSV table here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact exponents, region, and sharpness report.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Fit the sublevel growth exponents and compare with the prediction.
    VerifySublevel {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Fit the Fourier decay slope along one frequency axis.
    VerifyDecay {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Frequency axis, 1..=n+1 (default: the phase axis n+1).
        #[arg(long)]
        direction: Option<usize>,
        /// Allow the slow three-variable oscillatory oracle.
        #[arg(long = "allow-3d-oscillatory")]
        allow_3d: bool,
    },
    /// Classify a (p, beta) pair against the boundedness region.
    Classify {
        #[command(flatten)]
        common: CommonArgs,
        /// Lebesgue exponent p (rational, 1 < p).
        #[arg(long)]
        p: String,
        /// Smoothing order beta (rational, beta > 0).
        #[arg(long)]
        beta: String,
    },
}

fn load_spec(common: &CommonArgs, oracle: Option<&OracleArgs>) -> Result<AnalysisSpec, RunError> {
    let text = fs::read_to_string(&common.spec)
        .map_err(|e| RunError::Spec(format!("cannot read {}: {e}", common.spec.display())))?;
    let mut spec = AnalysisSpec::parse(&text)?;
    if let Some(o) = common.override_o {
        spec.o_override = Some(o);
    }
    if let Some(oracle) = oracle {
        if let Some(seed) = oracle.seed {
            spec.oracle.seed = seed;
        }
        if let Some(budget) = oracle.budget {
            spec.oracle.budget = budget;
            spec.oracle.decay_budget = budget;
        }
    }
    Ok(spec)
}

fn emit(common: &CommonArgs, json: String) -> Result<(), RunError> {
    match &common.out {
        Some(path) => fs::write(path, json.as_bytes())
            .map_err(|e| RunError::Spec(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn emit_csv(oracle: &OracleArgs, csv: &str) -> Result<(), RunError> {
    if let Some(path) = &oracle.csv {
        fs::write(path, csv.as_bytes())
            .map_err(|e| RunError::Spec(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run() -> Result<u8, RunError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze { common } => {
            let spec = load_spec(common, None)?;
            let report = run_analyze(&spec)?;
            emit(common, to_json_pretty(&report))?;
            Ok(0)
        }
        Command::VerifySublevel { common, oracle } => {
            let spec = load_spec(common, Some(oracle))?;
            let (report, csv) = run_verify_sublevel(&spec)?;
            emit_csv(oracle, &csv)?;
            emit(common, to_json_pretty(&report))?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::VerifyDecay { common, oracle, direction, allow_3d } => {
            let spec = load_spec(common, Some(oracle))?;
            let direction = direction.unwrap_or(spec.n + 1);
            let (report, csv) = run_verify_decay(&spec, direction, *allow_3d)?;
            emit_csv(oracle, &csv)?;
            emit(common, to_json_pretty(&report))?;
            Ok(if report.consistent { 0 } else { 1 })
        }
        Command::Classify { common, p, beta } => {
            let spec = load_spec(common, None)?;
            let p = parse_rat(p).map_err(RunError::Spec)?;
            let beta = parse_rat(beta).map_err(RunError::Spec)?;
            let report = run_classify(&spec, &p, &beta)?;
            emit(common, to_json_pretty(&report))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("{}", err.error_json());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
