//! Command-line front end: assembly, verification, constraint checking and
//! export of the graded e8 models, for scripted and CI use.
//!
//! Exit codes: 0 on success / all checks passing, 1 on a verification
//! failure (the report is still written), 2 on usage or input errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use e8forge::export::{export_string, import_constants};
use e8forge::ideal::simplicity_probe;
use e8forge::killing::verify_killing;
use e8forge::models::{canonical_scalars, check, model_spec, ModelId, ScalarAssignment};
use e8forge::report::{
    to_json_string, violations_json, DimsJson, GradingJson, IdealJson, JacobiJson, KillingJson,
    VerifyJson,
};
use e8forge::verify::{verify_grading, verify_jacobi, JacobiMode};
use e8forge::{assemble, parse_scalar, Error};

#[derive(Parser)]
#[command(
    name = "e8forge",
    version,
    about = "Exact construction and verification of graded e8 models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble a model and write its structure-constant file
    Build(CommonArgs),
    /// Verify the Jacobi identity and the grading (closure + fullness)
    Verify(VerifyArgs),
    /// Check a scalar assignment against the model's constraint system
    Constraints(CommonArgs),
    /// Killing-form symmetry/invariance spot checks and exact rank
    Killing(SampledArgs),
    /// Ideal-closure simplicity probe over every basis seed
    Ideal(CommonArgs),
    /// Write the structure-constant file (same format as build)
    Export(CommonArgs),
    /// Print the component dimension table
    Dims(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Model name: z3, z4, z5, z6, z3sq, z2z4
    #[arg(long)]
    model: String,
    /// `canonical` or a path to a JSON file mapping scalar names to
    /// "num/den" strings
    #[arg(long, default_value = "canonical")]
    scalars: String,
    /// Override one scalar, repeatable: --set name=num/den
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
    /// Worker threads (also via E8FORGE_THREADS)
    #[arg(long)]
    threads: Option<usize>,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Jacobi mode: exhaustive or sampled
    #[arg(long, default_value = "exhaustive")]
    jacobi: String,
    /// Sample count for sampled mode
    #[arg(long, default_value_t = 50_000)]
    samples: u64,
    /// RNG seed for sampled mode
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SampledArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of random exact spot checks
    #[arg(long, default_value_t = 1_000)]
    samples: u64,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn load_scalars(common: &CommonArgs) -> Result<(ModelId, ScalarAssignment), Error> {
    let id = ModelId::parse(&common.model)?;
    let mut scalars = if common.scalars == "canonical" {
        canonical_scalars(id)
    } else {
        let text = fs::read_to_string(&common.scalars)?;
        let raw: BTreeMap<String, String> = serde_json::from_str(&text)?;
        let mut out = ScalarAssignment::new();
        for (name, value) in raw {
            out.insert(name, parse_scalar(&value)?);
        }
        out
    };
    for item in &common.set {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::BadScalar(format!("--set {item}: expected NAME=VALUE")))?;
        scalars.insert(name.to_string(), parse_scalar(value)?);
    }
    Ok((id, scalars))
}

fn configure_threads(threads: Option<usize>) {
    let n = threads.or_else(|| {
        std::env::var("E8FORGE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Ok(true) = all checks passed, Ok(false) = a verification failed.
fn dispatch(command: &Command) -> Result<bool, Error> {
    match command {
        Command::Build(common) | Command::Export(common) => {
            configure_threads(common.threads);
            let (id, scalars) = load_scalars(common)?;
            let alg = assemble(&model_spec(id, scalars)?)?;
            let text = export_string(&alg)?;
            // Imports must reproduce the export byte for byte.
            debug_assert!(import_constants(text.as_bytes()).is_ok());
            emit(&common.out, &text)?;
            Ok(true)
        }
        Command::Dims(common) => {
            configure_threads(common.threads);
            let (id, scalars) = load_scalars(common)?;
            let alg = assemble(&model_spec(id, scalars)?)?;
            emit(&common.out, &to_json_string(&DimsJson::new(&alg)))?;
            Ok(true)
        }
        Command::Constraints(common) => {
            let (id, scalars) = load_scalars(common)?;
            let violations = check(id, &scalars)?;
            emit(&common.out, &to_json_string(&violations_json(&violations)))?;
            Ok(violations.is_empty())
        }
        Command::Verify(args) => {
            configure_threads(args.common.threads);
            let (id, scalars) = load_scalars(&args.common)?;
            let alg = assemble(&model_spec(id, scalars)?)?;
            let mode = match args.jacobi.as_str() {
                "exhaustive" => JacobiMode::Exhaustive,
                "sampled" => JacobiMode::Sampled {
                    count: args.samples,
                    seed: args.seed,
                },
                other => {
                    return Err(Error::BadScalar(format!(
                        "--jacobi {other}: expected exhaustive or sampled"
                    )))
                }
            };
            let jacobi = verify_jacobi(&alg, mode, 10);
            let grading = verify_grading(&alg);
            let passed = jacobi.passed() && grading.passed();
            let report = VerifyJson {
                model: id.name().to_string(),
                jacobi: JacobiJson::new(&jacobi),
                grading: GradingJson::new(&alg, &grading),
                passed,
            };
            emit(&args.common.out, &to_json_string(&report))?;
            Ok(passed)
        }
        Command::Killing(args) => {
            configure_threads(args.common.threads);
            let (id, scalars) = load_scalars(&args.common)?;
            let alg = assemble(&model_spec(id, scalars)?)?;
            let report = verify_killing(&alg, args.samples, args.seed);
            let passed = report.passed();
            emit(
                &args.common.out,
                &to_json_string(&KillingJson::new(id.name(), &report)),
            )?;
            Ok(passed)
        }
        Command::Ideal(common) => {
            configure_threads(common.threads);
            let (id, scalars) = load_scalars(common)?;
            let alg = assemble(&model_spec(id, scalars)?)?;
            let report = simplicity_probe(&alg);
            let passed = report.passed();
            emit(
                &common.out,
                &to_json_string(&IdealJson::new(id.name(), &report)),
            )?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
