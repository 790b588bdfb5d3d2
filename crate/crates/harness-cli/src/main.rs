//! `lp-harness`: run optimizer trajectories, sweep learning rates, compare
//! trajectories, and print the closed-form step-size quantities.
//!
//! Exit codes: 0 on success (including a passing `compare`), 1 when a
//! `compare` runs but exceeds its tolerance, 2 on any error. Errors are
//! printed to stderr as one JSON object with a machine-readable category.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use harness_cli::{
    compare_trajectories, export_trajectory, import_trajectory, read_json_config,
    render_trajectory, run_trajectory, sweep_lr, Format, RunConfig, SweepConfig,
};
use optim_core::{recommended_lr, Method};
use oracles::BoundReport;

#[derive(Parser)]
#[command(name = "lp-harness", version, about = "Experiment harness for L^p adaptive gradient optimizers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one optimizer trajectory from a JSON config file.
    Run(RunArgs),
    /// Run a learning-rate sweep over (method, p) candidates.
    Sweep(SweepArgs),
    /// Compare two exported trajectory CSVs pointwise.
    Compare(CompareArgs),
    /// Print max-step and plateau-decay values for a list of p exponents.
    Bounds(BoundsArgs),
    /// Print the recommended starting learning rate for an exponent p.
    RecommendLr(RecommendLrArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON file mapping onto the run config.
    #[arg(long)]
    config: PathBuf,
    /// Overrides for the corresponding config fields.
    #[arg(long)]
    method: Option<Method>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta1: Option<f64>,
    #[arg(long)]
    beta2: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    bias_correction: Option<bool>,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated start point, e.g. "-0.866,-0.5".
    #[arg(long, value_parser = parse_point)]
    start: Option<Point>,
    /// Output file; stdout when neither this nor the config sets a path.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Clone)]
struct Point(Vec<f64>);

fn parse_point(s: &str) -> Result<Point, String> {
    s.split(',')
        .map(|part| part.trim().parse::<f64>().map_err(|e| format!("`{part}`: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Point)
}

#[derive(Args)]
struct SweepArgs {
    /// JSON file with the base run, the alpha grid, and the candidates.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Report file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    a: PathBuf,
    b: PathBuf,
    /// Maximum allowed pointwise deviation (infinity norm over iterates).
    #[arg(long, default_value_t = 1e-4)]
    tolerance: f64,
}

#[derive(Args)]
struct BoundsArgs {
    /// Exponents to report on; repeat the flag for several values.
    #[arg(long = "p", default_values_t = [1.2, 1.5, 2.0, 3.0, 6.0])]
    p: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.9)]
    beta1: f64,
    #[arg(long, default_value_t = 0.999)]
    beta2: f64,
}

#[derive(Args)]
struct RecommendLrArgs {
    #[arg(long)]
    p: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(error) => {
            let payload = json!({
                "error": { "category": error.category(), "message": error.to_string() }
            });
            eprintln!("{payload}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> harness_cli::Result<ExitCode> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::RecommendLr(args) => cmd_recommend_lr(args),
    }
}

fn cmd_run(args: RunArgs) -> harness_cli::Result<ExitCode> {
    let mut config: RunConfig = read_json_config(&args.config)?;
    if let Some(method) = args.method {
        config.optimizer.method = method;
        config.optimizer.bias_correction = matches!(method, Method::LpAdam | Method::AdaMax);
    }
    if let Some(p) = args.p {
        config.optimizer.p = p;
    }
    if let Some(alpha) = args.alpha {
        config.optimizer.alpha = alpha;
    }
    if let Some(beta1) = args.beta1 {
        config.optimizer.beta1 = beta1;
    }
    if let Some(beta2) = args.beta2 {
        config.optimizer.beta2 = beta2;
    }
    if let Some(epsilon) = args.epsilon {
        config.optimizer.epsilon = epsilon;
    }
    if let Some(bias) = args.bias_correction {
        config.optimizer.bias_correction = bias;
    }
    if let Some(iterations) = args.iterations {
        config.iterations = iterations;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(Point(start)) = args.start {
        config.start_point = start;
    }
    if let Some(output) = args.output {
        config.output = Some(output);
    }

    let trajectory = run_trajectory(&config)?;
    match &config.output {
        Some(path) => export_trajectory(&trajectory, &config, args.format, path)?,
        None => print!("{}", render_trajectory(&trajectory, &config, args.format)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> harness_cli::Result<ExitCode> {
    let mut config: SweepConfig = read_json_config(&args.config)?;
    if let Some(iterations) = args.iterations {
        config.base.iterations = iterations;
    }
    if let Some(seed) = args.seed {
        config.base.seed = seed;
    }
    let report = sweep_lr(&config.base, &config.grid, &config.candidates)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    match &args.output {
        Some(path) => harness_cli::write_text(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: CompareArgs) -> harness_cli::Result<ExitCode> {
    let a = import_trajectory(&args.a)?;
    let b = import_trajectory(&args.b)?;
    let report = compare_trajectories(&a, &b, args.tolerance)?;
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bounds(args: BoundsArgs) -> harness_cli::Result<ExitCode> {
    let mut rows = Vec::with_capacity(args.p.len());
    for &p in &args.p {
        let report = BoundReport::new(p, args.alpha, args.beta1, args.beta2)
            .map_err(map_oracle_error)?;
        rows.push(json!({
            "p": report.p,
            "alpha": report.alpha,
            "beta1": report.beta1,
            "beta2": report.beta2,
            "max_step": report.max_step,
            "decay_rate": report.decay_rate,
            "decaying": report.decaying(),
        }));
    }
    println!("{}", serde_json::Value::Array(rows));
    Ok(ExitCode::SUCCESS)
}

fn cmd_recommend_lr(args: RecommendLrArgs) -> harness_cli::Result<ExitCode> {
    let alpha = recommended_lr(args.p)?;
    println!("{}", json!({ "p": args.p, "alpha": alpha }));
    Ok(ExitCode::SUCCESS)
}

fn map_oracle_error(error: oracles::Error) -> harness_cli::Error {
    match error {
        oracles::Error::InvalidHyperparameter(inner) => harness_cli::Error::Optimizer(inner),
        // BoundReport::new only validates hyperparameters.
        other => unreachable!("unexpected oracle error from bounds: {other}"),
    }
}
