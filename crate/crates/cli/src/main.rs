use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use symtensor_core::variety::DEFAULT_ENUMERATION_BUDGET;
use symtensor_core::{
    estimate_dimension, iterate_cone_variety, jump_table, quadric_envelope, run_suite, zak_check, EstimateConfig, ModelSpec,
    PrimeField, VarietyModel,
};

/// Twisted symmetric differentials and secant geometry of projective varieties.
#[derive(Debug, Parser)]
#[command(name = "symtensor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate dim H^0(X, S^m Omega(k)) by sampled linear conditions.
    Dimension {
        /// Model JSON file or builtin:NAME.
        #[arg(long)]
        model: String,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Smallest prime tried; raised past the admissibility bound.
        #[arg(long, default_value_t = 101)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of point batches per prime.
        #[arg(long, default_value_t = 40)]
        batches: usize,
        #[arg(long, default_value_t = 3)]
        window: usize,
        #[arg(long, default_value_t = 3)]
        nprimes: usize,
        #[arg(long, default_value_t = 5)]
        batch_size: usize,
    },
    /// Iterate the cone variety construction over F_p.
    Trisecant {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 11)]
        prime: u64,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        /// Coverage threshold reported against S_1.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
    },
    /// Check that secant points off X lie on tangent spaces.
    Zak {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 7)]
        prime: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
    },
    /// Quadrics through the rational points of X.
    Envelope {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 7)]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
    },
    /// Invariant monomial counts for the two descent conditions.
    Plurigenera {
        #[arg(long, default_value_t = 12)]
        mmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run every scenario file in a directory.
    Suite {
        #[arg(long, default_value = "scenarios")]
        dir: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 1 when any scenario fails or is indeterminate.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn load_model(reference: &str) -> Result<ModelSpec> {
    ModelSpec::resolve(reference, Some(Path::new("."))).with_context(|| format!("loading model {reference}"))
}

fn over_prime(reference: &str, p: u64) -> Result<VarietyModel<PrimeField>> {
    let spec = load_model(reference)?;
    Ok(VarietyModel::from_spec(&spec, &PrimeField::new(p)?)?)
}

fn print_json(v: serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Dimension { model, m, k, prime, seed, batches, window, nprimes, batch_size } => {
            let cfg = EstimateConfig { prime, nprimes, seed, batch_size, window, max_batches: batches, ..EstimateConfig::default() };
            print_json(serde_json::to_value(estimate_dimension(&load_model(&model)?, m, k, &cfg)?)?)?;
        }
        Command::Trisecant { model, prime, kmax, threshold, budget } => {
            let it = iterate_cone_variety(&over_prime(&model, prime)?, kmax, budget)?;
            let s1 = it.steps.get(1).map(|s| s.coverage);
            print_json(json!({
                "model": model,
                "prime": it.prime,
                "universe": it.universe,
                "vertices": it.vertices,
                "skipped_singular": it.skipped_singular,
                "fixpoint_at": it.fixpoint_at,
                "steps": it.steps,
                "threshold": threshold,
                "meets_threshold": threshold.zip(s1).map(|(t, c)| c >= t),
                "heuristic": true,
            }))?;
        }
        Command::Zak { model, prime, trials, seed, budget } => {
            print_json(serde_json::to_value(zak_check(&over_prime(&model, prime)?, trials, seed, budget)?)?)?;
        }
        Command::Envelope { model, prime, budget } => {
            let env = quadric_envelope(&over_prime(&model, prime)?, budget)?;
            print_json(json!({ "model": model, "prime": prime, "dimension": env.dim(), "quadrics": env.rendered() }))?;
        }
        Command::Plurigenera { mmax, format } => {
            let table = jump_table(mmax)?;
            match format {
                Format::Text => print!("{}", table.to_text()),
                Format::Json => print_json(serde_json::to_value(&table)?)?,
            }
        }
        Command::Suite { dir, out, strict } => {
            let report = run_suite(&dir)?;
            let text = report.to_json() + "\n";
            match &out {
                Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            eprintln!(
                "{} scenarios: {} passed, {} failed, {} indeterminate",
                report.total, report.passed, report.failed, report.indeterminate
            );
            if strict && report.passed != report.total {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
