use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fcsr_core::harness::{
    build_synthetic_with_variance, run_sweep_config, SweepConfig, SyntheticKind, DEFAULT_BASE_SEED,
    SYNTHETIC_VARIANCE,
};
use fcsr_core::hardness::{compute_hardness, feasibility_class, json_number, predict_exponents, risky_class};
use fcsr_core::movielens::{
    auto_select_portfolios, build_instance, AutoSelect, PortfolioSpec, RatingsCorpus, DEFAULT_MIN_RATINGS,
    DEFAULT_NORMALIZER, DEFAULT_THRESHOLD,
};
use fcsr_core::algorithms::run_algorithm;
use fcsr_core::{AlgorithmKind, AlgorithmParams, Instance, Report, RngStream};

/// Feasibility-constrained best arm identification: instances, hardness, runs and sweeps.
#[derive(Parser, Debug)]
#[command(name = "fcsr", version)]
struct Cli {
    /// Base seed for every random stream (default is printed to the log).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Human-readable output instead of compact machine output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a synthetic instance, or one file per member of a lower-bound class.
    GenInstance(GenArgs),
    /// Print gaps, hardness indices and predicted error exponents.
    Hardness(HardnessArgs),
    /// Run one algorithm once and print its trace.
    Run(RunArgs),
    /// Run a Monte-Carlo sweep described by a TOML config.
    Sweep(SweepArgs),
    /// Turn MovieLens ratings into a portfolio instance.
    Ingest(IngestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Risky,
    Feasibility,
    Mean,
    Combined,
    FeasibilityClass,
    RiskyClass,
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    /// Synthetic gap parameter, in (0.001, 0.1).
    #[arg(long)]
    a: Option<f64>,
    /// Synthetic noise variance.
    #[arg(long, default_value_t = SYNTHETIC_VARIANCE)]
    variance: f64,
    /// Feasibility-class gap, in (0, 1/4].
    #[arg(long, default_value_t = 0.1)]
    d: f64,
    /// Risky-class gap scale.
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Arms for class generators.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Attributes for the risky class.
    #[arg(long, default_value_t = 4)]
    m: usize,
    /// Output file, or output directory for classes.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct HardnessArgs {
    instance: PathBuf,
    /// Budget for exponent predictions.
    #[arg(long)]
    budget: Option<u64>,
    /// Sub-Gaussian parameter for the upper-bound exponent.
    #[arg(long, default_value_t = 0.5)]
    r: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    instance: PathBuf,
    #[arg(long)]
    algorithm: String,
    #[arg(long)]
    budget: u64,
    #[arg(long)]
    f: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    explore_fraction: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Result table; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the result as JSON.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IngestArgs {
    #[arg(long)]
    ratings: PathBuf,
    #[arg(long)]
    movies: PathBuf,
    /// Portfolio file (JSON); portfolios are picked automatically when absent.
    #[arg(long)]
    portfolio: Option<PathBuf>,
    /// Portfolios to pick automatically.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Genres to pick automatically.
    #[arg(long, default_value_t = 5)]
    m: usize,
    /// Overrides the portfolio file's threshold.
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    min_ratings: Option<usize>,
    #[arg(long)]
    normalizer: Option<f64>,
    /// Where to write the automatically chosen portfolios.
    #[arg(long)]
    portfolio_out: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let seed = || {
        cli.seed.unwrap_or_else(|| {
            log::info!("no --seed given; using {DEFAULT_BASE_SEED}");
            DEFAULT_BASE_SEED
        })
    };
    match &cli.command {
        Command::GenInstance(args) => gen_instance(args, cli.pretty),
        Command::Hardness(args) => hardness(args, cli.pretty),
        Command::Run(args) => run(args, seed(), cli.pretty),
        Command::Sweep(args) => sweep(args, cli.seed, cli.workers, cli.pretty),
        Command::Ingest(args) => ingest(args, seed(), cli.pretty),
    }
}

fn gen_instance(args: &GenArgs, pretty: bool) -> Result<()> {
    let synthetic = match args.kind {
        GenKind::Risky => Some(SyntheticKind::Risky),
        GenKind::Feasibility => Some(SyntheticKind::Feasibility),
        GenKind::Mean => Some(SyntheticKind::Mean),
        GenKind::Combined => Some(SyntheticKind::Combined),
        GenKind::FeasibilityClass | GenKind::RiskyClass => None,
    };
    if let Some(kind) = synthetic {
        let a = args.a.unwrap_or_else(|| kind.default_a());
        let instance: Instance = build_synthetic_with_variance(kind, a, args.variance)?;
        instance
            .write_json(&args.out, pretty)
            .with_context(|| format!("writing {}", args.out.display()))?;
        log::info!("wrote {} instance to {}", kind.name(), args.out.display());
        return Ok(());
    }
    let (stem, members) = match args.kind {
        GenKind::FeasibilityClass => ("feasibility", feasibility_class::<f64>(args.d, args.k)?),
        _ => ("risky", risky_class::<f64>(args.beta, args.k, args.m)?),
    };
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    for (i, member) in members.iter().enumerate() {
        let path = args.out.join(format!("{stem}-{:02}.json", i + 1));
        member
            .write_json(&path, pretty)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    log::info!("wrote {} {stem}-class instances to {}", members.len(), args.out.display());
    Ok(())
}

fn load_instance(path: &Path) -> Result<Instance> {
    Instance::read_json(path).with_context(|| format!("reading instance {}", path.display()))
}

fn hardness(args: &HardnessArgs, pretty: bool) -> Result<()> {
    let instance = load_instance(&args.instance)?;
    let report = compute_hardness(&instance)?;
    let mut doc = report.to_json_value();
    let prediction = match args.budget {
        Some(budget) => match predict_exponents(&report, budget, args.r) {
            Ok(p) => Some(p),
            Err(e) => {
                log::warn!("no exponent prediction: {e}");
                None
            }
        },
        None => None,
    };
    if let Some(p) = &prediction {
        doc["prediction"] = json!({
            "budget": p.budget,
            "sub_gaussian_r": json_number(p.sub_gaussian_r),
            "lower_bound_exponent": json_number(p.lower_bound_exponent),
            "upper_bound_exponent": json_number(p.upper_bound_exponent),
            "feasibility_class_exponent": json_number(p.feasibility_class_exponent),
            "risky_class_exponent": json_number(p.risky_class_exponent),
            "lower_bound_prefactor": json_number(p.lower_bound_prefactor),
            "upper_bound_prefactor": json_number(p.upper_bound_prefactor),
            "lower_bound_probability": json_number(p.lower_bound_probability),
            "upper_bound_probability": json_number(p.upper_bound_probability),
        });
    }
    let text = if pretty {
        hardness_text(&report, &doc)
    } else {
        format!("{doc}\n")
    };
    emit(args.out.as_deref(), &text)
}

fn hardness_text(report: &Report, doc: &Value) -> String {
    let mut s = String::new();
    let fmt = |v: &Value| match v {
        Value::Number(n) => format!("{:.6}", n.as_f64().unwrap_or(f64::NAN)),
        other => other.as_str().unwrap_or("?").to_string(),
    };
    s.push_str(&format!(
        "K = {}, M = {}, tau = {}\nbest arm: {}\n",
        report.num_arms, report.num_attributes, report.threshold, report.best_arm
    ));
    s.push_str("threshold gaps:\n");
    for (i, row) in doc["threshold_gaps"].as_array().into_iter().flatten().enumerate() {
        let cells: Vec<String> = row.as_array().into_iter().flatten().map(fmt).collect();
        s.push_str(&format!("  arm {:>2}: {}\n", i + 1, cells.join("  ")));
    }
    let gaps: Vec<String> = doc["suboptimality_gaps"].as_array().into_iter().flatten().map(fmt).collect();
    s.push_str(&format!("suboptimality gaps: {}\n", gaps.join("  ")));
    let risky: Vec<String> = report.risky_set.iter().map(|i| (i + 1).to_string()).collect();
    s.push_str(&format!("risky arms: {{{}}}\n", risky.join(", ")));
    for key in ["h2r", "hf", "htbp", "hfc"] {
        s.push_str(&format!("{key:>5} = {}\n", fmt(&doc[key])));
    }
    if let Some(p) = doc.get("prediction") {
        s.push_str(&format!("at T = {}:\n", p["budget"]));
        for key in [
            "lower_bound_exponent",
            "upper_bound_exponent",
            "feasibility_class_exponent",
            "risky_class_exponent",
            "lower_bound_probability",
            "upper_bound_probability",
        ] {
            s.push_str(&format!("  {key} = {}\n", fmt(&p[key])));
        }
    }
    s
}

fn run(args: &RunArgs, seed: u64, pretty: bool) -> Result<()> {
    let instance = load_instance(&args.instance)?;
    let kind: AlgorithmKind = args.algorithm.parse()?;
    let defaults = AlgorithmParams::default();
    let params = AlgorithmParams {
        f: args.f.unwrap_or(defaults.f),
        g: args.g.unwrap_or(defaults.g),
        explore_fraction: args.explore_fraction.unwrap_or(defaults.explore_fraction),
    };
    let rng = RngStream::for_trial(seed, kind.id(), args.budget, 0).rng();
    let trace = run_algorithm(kind, &instance, args.budget, instance.threshold(), &params, rng)?;
    let best = instance.oracle().best_arm;
    log::info!(
        "{kind}: decided {} (oracle {best}) using {} of {} pulls",
        trace.decision,
        trace.pulls_total,
        args.budget
    );
    let text = if pretty {
        serde_json::to_string_pretty(&trace)?
    } else {
        serde_json::to_string(&trace)?
    };
    emit(args.out.as_deref(), &(text + "\n"))
}

fn sweep(args: &SweepArgs, seed: Option<u64>, workers: usize, pretty: bool) -> Result<()> {
    let mut config = SweepConfig::read(&args.config).with_context(|| format!("reading {}", args.config.display()))?;
    if let Some(seed) = seed {
        config.base_seed = Some(seed);
    } else if config.base_seed.is_none() {
        log::info!("no --seed or base_seed given; using {DEFAULT_BASE_SEED}");
    }
    config.validate().context("invalid sweep config")?;
    let base_dir = args.config.parent().unwrap_or(Path::new("."));
    let result = run_sweep_config(&config, base_dir, workers)?;
    for cell in result.cells.iter().filter(|c| c.error.is_some()) {
        log::warn!("cell {} T={} failed: {}", cell.algorithm, cell.budget, cell.error.as_deref().unwrap_or(""));
    }
    emit(args.out.as_deref(), &result.to_table())?;
    if let Some(path) = &args.json_out {
        let value = result.to_json_value();
        let text = if pretty {
            serde_json::to_string_pretty(&value)?
        } else {
            value.to_string()
        };
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn ingest(args: &IngestArgs, seed: u64, pretty: bool) -> Result<()> {
    for p in [&args.ratings, &args.movies] {
        if !p.is_file() {
            bail!("{} is not a readable file", p.display());
        }
    }
    log::info!("parsing {} and {}", args.ratings.display(), args.movies.display());
    let corpus = RatingsCorpus::read(&args.ratings, &args.movies)?;
    log::info!(
        "{} ratings over {} movies ({} malformed rows skipped)",
        corpus.ratings.len(),
        corpus.movies.len(),
        corpus.report.malformed_ratings + corpus.report.malformed_movies
    );
    let mut spec = match &args.portfolio {
        Some(path) => PortfolioSpec::read(path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            let request = AutoSelect {
                arms: args.k,
                genres: args.m,
                threshold: args.threshold.unwrap_or(DEFAULT_THRESHOLD),
                min_ratings: args.min_ratings.unwrap_or(DEFAULT_MIN_RATINGS),
                normalizer: args.normalizer.unwrap_or(DEFAULT_NORMALIZER),
                seed,
            };
            let spec = auto_select_portfolios(&corpus, &request)?;
            if let Some(path) = &args.portfolio_out {
                fs::write(path, spec.to_json()? + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            spec
        }
    };
    if let Some(t) = args.threshold {
        spec.threshold = t;
    }
    if let Some(n) = args.min_ratings {
        spec.min_ratings = n;
    }
    if let Some(n) = args.normalizer {
        spec.normalizer = n;
    }
    let instance = build_instance(&corpus, &spec)?;
    instance
        .write_json(&args.out, pretty)
        .with_context(|| format!("writing {}", args.out.display()))?;
    log::info!(
        "wrote {}x{} instance to {} (oracle best arm {})",
        instance.num_arms(),
        instance.num_attributes(),
        args.out.display(),
        instance.oracle().best_arm
    );
    Ok(())
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}
