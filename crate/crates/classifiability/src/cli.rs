//! Command-line surface tying the modules together.
//!
//! Every subcommand writes a JSON report to stdout (or `--out`) and a short
//! human-readable summary to stderr. Exit codes: 0 success, 1 usage error,
//! 2 data/computation error. Runs with a fixed `--seed` are byte-identical
//! across invocations and worker counts (`CLASSIFIABILITY_THREADS`).

use crate::baselines::{self, ClassifierConfig, ClassifierKind, SplitSpec};
use crate::data::{EstimateReport, LabeledDataset, NeighborhoodSpec};
use crate::estimator::{self, ExecOptions};
use crate::io::{self, ColumnSchema, Encoding};
use crate::metrics::{MetricKind, ALL_METRICS};
use crate::neighbors::{k_from_fraction, threshold_from_fraction};
use crate::oracle::{self, AnalyticProblem, ProblemSpec};
use crate::synth::{self, MadelonParams, SynthSpec};
use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }
}

macro_rules! impl_failure_from {
    ($($t:ty),* $(,)?) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Failure(e.to_string())
            }
        })*
    };
}

impl_failure_from!(
    crate::data::DataError,
    crate::metrics::MetricError,
    crate::neighbors::NeighborError,
    crate::estimator::EstimatorError,
    crate::oracle::OracleError,
    crate::synth::SynthError,
    crate::baselines::BaselineError,
    crate::io::IoError,
    serde_json::Error,
    std::io::Error,
);

#[derive(Parser)]
#[command(
    name = "classifiability",
    version,
    about = "Estimate the intrinsic accuracy limit of labeled datasets",
    long_about = "Estimates the classifiability limit of a labeled dataset from the \
local entropy of class proportions in metric neighborhoods, with synthetic \
problem generators, analytic oracles, resampling diagnostics and neighbor \
baselines for comparison."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the classifiability limit of a CSV dataset
    Estimate(EstimateArgs),
    /// Generate a synthetic dataset CSV
    Generate(GenerateArgs),
    /// Estimate across a noise sweep of a synthetic generator
    SweepNoise(SweepNoiseArgs),
    /// Estimate on stratified subsamples of increasing proportion
    SweepSubsample(SweepSubsampleArgs),
    /// Jackknife (bootstrap without replacement) the limit estimate
    Jackknife(JackknifeArgs),
    /// Compare neighbor-classifier test accuracy against the estimate
    Compare(CompareArgs),
    /// Export per-point entropies for plotting
    EntropyMap(EntropyMapArgs),
    /// Analytic limit of a closed-form problem by quadrature
    Oracle(OracleArgs),
    /// Check the potential-class count against the 20N rule
    Overclass(OverclassArgs),
}

#[derive(Args)]
struct DatasetArgs {
    /// Input dataset CSV (header row required)
    #[arg(long)]
    dataset: PathBuf,
    /// Label column name
    #[arg(long)]
    label: String,
    /// Feature columns, comma separated (default: all non-label columns)
    #[arg(long, value_delimiter = ',')]
    features: Option<Vec<String>>,
    /// Columns to ordinal-encode by first appearance, comma separated
    #[arg(long, value_delimiter = ',')]
    categorical: Vec<String>,
    /// Standard-scale features before computing distances
    #[arg(long)]
    scale: bool,
}

#[derive(Args)]
struct NeighborhoodArgs {
    /// Radius threshold (strict: neighbors at distance < radius)
    #[arg(long)]
    radius: Option<f64>,
    /// Number of nearest neighbors
    #[arg(long)]
    k: Option<usize>,
    /// Choose k as this fraction of n, clipped to [k-min, k-max]
    #[arg(long)]
    auto_fraction: Option<f64>,
    /// Lower clip for --auto-fraction
    #[arg(long, default_value_t = 6)]
    k_min: usize,
    /// Upper clip for --auto-fraction
    #[arg(long, default_value_t = 32)]
    k_max: usize,
    /// Disable the spatial index and force the brute-force scan
    #[arg(long)]
    brute_force: bool,
}

impl NeighborhoodArgs {
    fn resolve(&self, n: usize, metric: MetricKind) -> Result<NeighborhoodSpec, CliError> {
        let chosen = usize::from(self.radius.is_some())
            + usize::from(self.k.is_some())
            + usize::from(self.auto_fraction.is_some());
        if chosen != 1 {
            return Err(CliError::usage(
                "exactly one of --radius, --k, --auto-fraction is required",
            ));
        }
        if let Some(theta) = self.radius {
            return Ok(NeighborhoodSpec::radius(theta, metric)?);
        }
        let k = match self.k {
            Some(k) => k,
            None => {
                let fraction = self.auto_fraction.expect("one mode flag present");
                if !(fraction > 0.0 && fraction <= 1.0) {
                    return Err(CliError::usage("--auto-fraction must lie in (0, 1]"));
                }
                if self.k_min < 1 || self.k_max < self.k_min {
                    return Err(CliError::usage("need 1 <= --k-min <= --k-max"));
                }
                if n < 2 {
                    return Err(CliError::usage("--auto-fraction needs at least 2 rows"));
                }
                k_from_fraction(n, fraction, self.k_min, self.k_max)
            }
        };
        Ok(NeighborhoodSpec::k_nearest(k, metric)?)
    }

    fn exec_options(&self) -> ExecOptions {
        ExecOptions { threads: None, brute_force: self.brute_force }
    }
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    data: DatasetArgs,
    #[command(flatten)]
    neighborhood: NeighborhoodArgs,
    /// Metric name, or `all` to sweep all six and mark the best
    #[arg(long, default_value = "l2")]
    metric: String,
    /// Also write per-point entropies as CSV
    #[arg(long)]
    entropy_csv: Option<PathBuf>,
    /// Cross-check the simplified entropy against the full formula
    #[arg(long)]
    verify_entropy: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// circles | moons | blobs | linear1d | overlap1d | madelon
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: usize,
    /// Gaussian noise standard deviation (circles, moons, blobs)
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Inner/outer radius ratio for circles
    #[arg(long, default_value_t = 0.5)]
    radius_ratio: f64,
    /// Blob centers as `x,y;x,y;...` (default: four unit-square corners)
    #[arg(long)]
    centers: Option<String>,
    /// Offset of the second class for overlap1d
    #[arg(long, default_value_t = 0.5)]
    offset: f64,
    /// Total feature count for madelon
    #[arg(long, default_value_t = 10)]
    features: usize,
    /// Informative feature count for madelon
    #[arg(long, default_value_t = 4)]
    informative: usize,
    /// Redundant (linear-combination) feature count for madelon
    #[arg(long, default_value_t = 3)]
    redundant: usize,
    /// Class count for madelon
    #[arg(long, default_value_t = 4)]
    classes: usize,
    #[arg(long, default_value_t = 1)]
    clusters_per_class: usize,
    /// Half-side of the cluster hypercube for madelon
    #[arg(long, default_value_t = 1.0)]
    class_sep: f64,
    /// Fraction of labels replaced by a uniformly random class
    #[arg(long, default_value_t = 0.0)]
    flip: f64,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepNoiseArgs {
    /// circles | moons | blobs
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 500)]
    n: usize,
    #[command(flatten)]
    neighborhood: NeighborhoodArgs,
    #[arg(long, default_value = "l2")]
    metric: String,
    #[arg(long, default_value_t = 0.0)]
    noise_min: f64,
    #[arg(long)]
    noise_max: f64,
    /// Number of noise levels (inclusive endpoints)
    #[arg(long, default_value_t = 10)]
    levels: usize,
    /// Datasets per noise level
    #[arg(long, default_value_t = 25)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    radius_ratio: f64,
    #[arg(long)]
    centers: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepSubsampleArgs {
    #[command(flatten)]
    data: DatasetArgs,
    #[command(flatten)]
    neighborhood: NeighborhoodArgs,
    #[arg(long, default_value = "l2")]
    metric: String,
    /// Subsample proportions in (0, 1], comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    proportions: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct JackknifeArgs {
    #[command(flatten)]
    data: DatasetArgs,
    #[command(flatten)]
    neighborhood: NeighborhoodArgs,
    #[arg(long, default_value = "l2")]
    metric: String,
    /// Subsample fraction in (0, 1)
    #[arg(long, default_value_t = 0.8)]
    fraction: f64,
    #[arg(long, default_value_t = 10)]
    rounds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    data: DatasetArgs,
    /// k for the k-nearest-neighbor classifier
    #[arg(long, default_value_t = 5)]
    k: usize,
    #[arg(long, default_value = "l2")]
    metric: String,
    /// Radius for the radius classifier (default: mean-distance heuristic
    /// at --radius-fraction)
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, default_value_t = 0.02)]
    radius_fraction: f64,
    /// Train fraction of each stratified shuffle
    #[arg(long, default_value_t = 0.6667)]
    train_fraction: f64,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EntropyMapArgs {
    #[command(flatten)]
    data: DatasetArgs,
    #[command(flatten)]
    neighborhood: NeighborhoodArgs,
    #[arg(long, default_value = "l2")]
    metric: String,
    /// Also write the records as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// linear1d | overlap1d | full-overlap | path to a problem JSON file
    #[arg(long)]
    problem: String,
    /// Offset for overlap1d
    #[arg(long, default_value_t = 0.5)]
    offset: f64,
    /// Also draw this many labeled samples from the problem
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the sampled dataset CSV
    #[arg(long)]
    sample_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OverclassArgs {
    /// Per-dimension resolutions, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    resolutions: Vec<u64>,
    /// Number of data points available
    #[arg(long)]
    points: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses argv, runs the chosen subcommand and returns the process exit
/// code (0 success, 1 usage error, 2 data/computation error).
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            1
        }
        Err(CliError::Failure(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Generate(args) => cmd_generate(args),
        Command::SweepNoise(args) => cmd_sweep_noise(args),
        Command::SweepSubsample(args) => cmd_sweep_subsample(args),
        Command::Jackknife(args) => cmd_jackknife(args),
        Command::Compare(args) => cmd_compare(args),
        Command::EntropyMap(args) => cmd_entropy_map(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Overclass(args) => cmd_overclass(args),
    }
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn parse_metric(name: &str) -> Result<MetricKind, CliError> {
    MetricKind::from_str(name).map_err(|e| CliError::usage(e.to_string()))
}

fn load_dataset(args: &DatasetArgs) -> Result<LabeledDataset, CliError> {
    let schema = match &args.features {
        Some(columns) => {
            let encodings: Vec<Encoding> = columns
                .iter()
                .map(|c| {
                    if args.categorical.contains(c) {
                        Encoding::Categorical
                    } else {
                        Encoding::Numeric
                    }
                })
                .collect();
            ColumnSchema::new(args.label.clone(), columns.clone(), encodings)?
        }
        None => io::infer_schema(&args.dataset, &args.label, &args.categorical)?,
    };
    let dataset = io::load_csv(&args.dataset, &schema)?;
    Ok(if args.scale { io::standard_scale(&dataset).0 } else { dataset })
}

#[derive(Serialize)]
struct MetricSweepReport {
    results: Vec<EstimateReport>,
    best_metric: MetricKind,
}

fn estimate_one(
    dataset: &LabeledDataset,
    args: &EstimateArgs,
    metric: MetricKind,
) -> Result<EstimateReport, CliError> {
    let spec = args.neighborhood.resolve(dataset.n(), metric)?;
    let report =
        estimator::classifiability_opts(dataset, &spec, &args.neighborhood.exec_options())?;
    if args.verify_entropy {
        verify_entropy_forms(dataset, &spec, &report)?;
    }
    Ok(report)
}

/// Recomputes every per-point entropy through the full relative-entropy
/// formula and checks it against the simplified production value.
fn verify_entropy_forms(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    report: &EstimateReport,
) -> Result<(), CliError> {
    let records = estimator::entropy_map_opts(dataset, spec, &ExecOptions::default())?;
    let index = crate::neighbors::NeighborIndex::build(dataset, spec.metric);
    for (record, &simplified) in records.iter().zip(&report.per_point_entropy) {
        let list = match spec.mode {
            crate::data::NeighborhoodMode::Radius { theta } => {
                index.within_radius(record.index, theta)
            }
            crate::data::NeighborhoodMode::KNearest { k } => index.k_nearest(record.index, k),
        }
        .expect("parameters already validated");
        let probs = estimator::local_probabilities(dataset, &list);
        let full = estimator::local_entropy_full(&probs);
        if (full - simplified).abs() > 1e-12 {
            return Err(CliError::Failure(format!(
                "entropy verification failed at point {}: full {full} vs simplified {simplified}",
                record.index
            )));
        }
    }
    eprintln!("entropy verification passed for {} points", records.len());
    Ok(())
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), CliError> {
    let dataset = load_dataset(&args.data)?;
    if args.metric == "all" {
        if let Some(path) = &args.entropy_csv {
            return Err(CliError::usage(format!(
                "--entropy-csv {} requires a single metric",
                path.display()
            )));
        }
        let mut results = Vec::with_capacity(ALL_METRICS.len());
        for metric in ALL_METRICS {
            results.push(estimate_one(&dataset, &args, metric)?);
        }
        let mut best = 0;
        for (i, report) in results.iter().enumerate() {
            if report.limit > results[best].limit {
                best = i;
            }
        }
        let best_metric = results[best].config.metric;
        for report in &results {
            eprintln!(
                "metric {:<10} limit {:.6}{}",
                report.config.metric.to_string(),
                report.limit,
                if report.config.metric == best_metric { "  <= best" } else { "" }
            );
        }
        let sweep = MetricSweepReport { results, best_metric };
        return emit_json(&sweep, args.out.as_deref());
    }
    let metric = parse_metric(&args.metric)?;
    let report = estimate_one(&dataset, &args, metric)?;
    if let Some(path) = &args.entropy_csv {
        let spec = report.config;
        let records =
            estimator::entropy_map_opts(&dataset, &spec, &args.neighborhood.exec_options())?;
        let file = std::fs::File::create(path)?;
        io::write_entropy_map_csv(&records, dataset.d(), file)?;
    }
    eprintln!(
        "limit {:.6} on n={} d={} ({} empty neighborhoods)",
        report.limit, report.n, report.d, report.empty_neighborhood_count
    );
    emit_json(&report, args.out.as_deref())
}

fn parse_centers(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    text.split(';')
        .map(|point| {
            point
                .split(',')
                .map(|coord| {
                    coord.trim().parse::<f64>().map_err(|_| {
                        CliError::usage(format!("cannot parse center coordinate `{coord}`"))
                    })
                })
                .collect()
        })
        .collect()
}

fn default_blob_centers() -> Vec<Vec<f64>> {
    vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]
}

fn synth_spec_from_args(args: &GenerateArgs) -> Result<SynthSpec, CliError> {
    let spec = match args.kind.as_str() {
        "circles" => SynthSpec::Circles {
            n: args.n,
            noise: args.noise,
            radius_ratio: args.radius_ratio,
            seed: args.seed,
        },
        "moons" => SynthSpec::Moons { n: args.n, noise: args.noise, seed: args.seed },
        "blobs" => SynthSpec::Blobs {
            n: args.n,
            centers: match &args.centers {
                Some(text) => parse_centers(text)?,
                None => default_blob_centers(),
            },
            noise: args.noise,
            seed: args.seed,
        },
        "linear1d" => SynthSpec::Linear1d { n: args.n, seed: args.seed },
        "overlap1d" => SynthSpec::OverlapUniform1d {
            n: args.n,
            offset: args.offset,
            seed: args.seed,
        },
        "madelon" => SynthSpec::MadelonLike(MadelonParams {
            n: args.n,
            n_features: args.features,
            n_informative: args.informative,
            n_redundant: args.redundant,
            n_classes: args.classes,
            clusters_per_class: args.clusters_per_class,
            class_sep: args.class_sep,
            flip_fraction: args.flip,
            seed: args.seed,
        }),
        other => {
            return Err(CliError::usage(format!(
                "unknown kind `{other}` (circles|moons|blobs|linear1d|overlap1d|madelon)"
            )))
        }
    };
    Ok(spec)
}

#[derive(Serialize)]
struct GenerateSummary {
    kind: String,
    n: usize,
    d: usize,
    classes: Vec<String>,
    seed: u64,
    out: String,
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let spec = synth_spec_from_args(&args)?;
    let dataset = synth::generate(&spec)?;
    io::save_csv_path(&dataset, &args.out)?;
    eprintln!("wrote {} rows x {} features to {}", dataset.n(), dataset.d(), args.out.display());
    let summary = GenerateSummary {
        kind: args.kind.clone(),
        n: dataset.n(),
        d: dataset.d(),
        classes: dataset.classes().names().to_vec(),
        seed: args.seed,
        out: args.out.display().to_string(),
    };
    emit_json(&summary, None)
}

#[derive(Serialize)]
struct NoisePoint {
    noise: f64,
    mean_limit: f64,
    std_limit: f64,
    limits: Vec<f64>,
}

#[derive(Serialize)]
struct NoiseSweepReport {
    kind: String,
    n: usize,
    config: NeighborhoodSpec,
    repeats: usize,
    points: Vec<NoisePoint>,
}

fn cmd_sweep_noise(args: SweepNoiseArgs) -> Result<(), CliError> {
    if args.levels < 2 {
        return Err(CliError::usage("--levels must be at least 2"));
    }
    if args.repeats == 0 {
        return Err(CliError::usage("--repeats must be at least 1"));
    }
    if !(args.noise_max >= args.noise_min && args.noise_min >= 0.0) {
        return Err(CliError::usage("need 0 <= --noise-min <= --noise-max"));
    }
    let metric = parse_metric(&args.metric)?;
    let spec = args.neighborhood.resolve(args.n, metric)?;
    let opts = args.neighborhood.exec_options();
    let make = |noise: f64, seed: u64| -> Result<LabeledDataset, CliError> {
        let spec = match args.kind.as_str() {
            "circles" => SynthSpec::Circles {
                n: args.n,
                noise,
                radius_ratio: args.radius_ratio,
                seed,
            },
            "moons" => SynthSpec::Moons { n: args.n, noise, seed },
            "blobs" => SynthSpec::Blobs {
                n: args.n,
                centers: match &args.centers {
                    Some(text) => parse_centers(text)?,
                    None => default_blob_centers(),
                },
                noise,
                seed,
            },
            other => {
                return Err(CliError::usage(format!(
                    "unknown kind `{other}` (circles|moons|blobs)"
                )))
            }
        };
        Ok(synth::generate(&spec)?)
    };
    let mut root = StdRng::seed_from_u64(args.seed);
    let mut points = Vec::with_capacity(args.levels);
    for level in 0..args.levels {
        let noise = args.noise_min
            + (args.noise_max - args.noise_min) * level as f64 / (args.levels - 1) as f64;
        let mut limits = Vec::with_capacity(args.repeats);
        for _ in 0..args.repeats {
            let dataset = make(noise, root.random())?;
            limits.push(estimator::classifiability_opts(&dataset, &spec, &opts)?.limit);
        }
        let mean = crate::numeric::mean(&limits);
        let std = crate::numeric::population_std(&limits);
        eprintln!("noise {noise:.4}: limit {mean:.4} +- {std:.4}");
        points.push(NoisePoint { noise, mean_limit: mean, std_limit: std, limits });
    }
    let report = NoiseSweepReport {
        kind: args.kind.clone(),
        n: args.n,
        config: spec,
        repeats: args.repeats,
        points,
    };
    emit_json(&report, args.out.as_deref())
}

#[derive(Serialize)]
struct SubsampleSweepReport {
    config: NeighborhoodSpec,
    repeats: usize,
    points: Vec<estimator::SweepPoint>,
}

fn cmd_sweep_subsample(args: SweepSubsampleArgs) -> Result<(), CliError> {
    let dataset = load_dataset(&args.data)?;
    let metric = parse_metric(&args.metric)?;
    let spec = args.neighborhood.resolve(dataset.n(), metric)?;
    let points = estimator::subsample_sweep_opts(
        &dataset,
        &spec,
        &args.proportions,
        args.repeats,
        args.seed,
        &args.neighborhood.exec_options(),
    )?;
    for point in &points {
        eprintln!(
            "proportion {:.3}: limit {:.4} +- {:.4}",
            point.proportion, point.mean_limit, point.std_limit
        );
    }
    let report = SubsampleSweepReport { config: spec, repeats: args.repeats, points };
    emit_json(&report, args.out.as_deref())
}

fn cmd_jackknife(args: JackknifeArgs) -> Result<(), CliError> {
    let dataset = load_dataset(&args.data)?;
    let metric = parse_metric(&args.metric)?;
    let spec = args.neighborhood.resolve(dataset.n(), metric)?;
    let report = estimator::jackknife_opts(
        &dataset,
        &spec,
        args.fraction,
        args.rounds,
        args.seed,
        &args.neighborhood.exec_options(),
    )?;
    eprintln!(
        "jackknife over {} rounds at {:.0}%: max {:.4}, mean {:.4} +- {:.4}",
        report.rounds,
        report.fraction * 100.0,
        report.max_limit,
        report.mean_limit,
        report.std_limit
    );
    emit_json(&report, args.out.as_deref())
}

#[derive(Serialize)]
struct CompareBaseline {
    #[serde(flatten)]
    classifier: ClassifierKind,
    mean_accuracy: f64,
    std_accuracy: f64,
    accuracies: Vec<f64>,
    gap_to_limit: f64,
}

#[derive(Serialize)]
struct CompareReport {
    estimate: EstimateReport,
    train_fraction: f64,
    repeats: usize,
    baselines: Vec<CompareBaseline>,
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let dataset = load_dataset(&args.data)?;
    let metric = parse_metric(&args.metric)?;
    // limit estimate per the neighbor-fraction rule
    let k_est = k_from_fraction(dataset.n(), 0.015, 6, 32);
    let spec = NeighborhoodSpec::k_nearest(k_est, metric)?;
    let estimate = estimator::classifiability(&dataset, &spec)?;
    let theta = match args.radius {
        Some(theta) => theta,
        None => threshold_from_fraction(&dataset, args.radius_fraction, metric)?,
    };
    let split = SplitSpec {
        train_fraction: args.train_fraction,
        stratified: true,
        seed: args.seed,
    };
    let mut baselines = Vec::new();
    for kind in [
        ClassifierKind::Knn { k: args.k },
        ClassifierKind::RadiusNeighbors { theta },
    ] {
        let config = ClassifierConfig { kind, metric };
        let eval = baselines::evaluate(&dataset, &split, &config, args.repeats)?;
        eprintln!(
            "{:?}: accuracy {:.4} +- {:.4} (limit {:.4})",
            kind, eval.mean_accuracy, eval.std_accuracy, estimate.limit
        );
        baselines.push(CompareBaseline {
            classifier: kind,
            mean_accuracy: eval.mean_accuracy,
            std_accuracy: eval.std_accuracy,
            accuracies: eval.accuracies,
            gap_to_limit: estimate.limit - eval.mean_accuracy,
        });
    }
    let report = CompareReport {
        estimate,
        train_fraction: args.train_fraction,
        repeats: args.repeats,
        baselines,
    };
    emit_json(&report, args.out.as_deref())
}

#[derive(Serialize)]
struct EntropyMapReport {
    limit: f64,
    n: usize,
    d: usize,
    config: NeighborhoodSpec,
    records: Vec<estimator::EntropyMapRecord>,
}

fn cmd_entropy_map(args: EntropyMapArgs) -> Result<(), CliError> {
    let dataset = load_dataset(&args.data)?;
    let metric = parse_metric(&args.metric)?;
    let spec = args.neighborhood.resolve(dataset.n(), metric)?;
    let opts = args.neighborhood.exec_options();
    let report = estimator::classifiability_opts(&dataset, &spec, &opts)?;
    let records = estimator::entropy_map_opts(&dataset, &spec, &opts)?;
    if let Some(path) = &args.csv {
        let file = std::fs::File::create(path)?;
        io::write_entropy_map_csv(&records, dataset.d(), file)?;
        eprintln!("wrote {} records to {}", records.len(), path.display());
    }
    eprintln!("limit {:.6} over {} points", report.limit, records.len());
    let out = EntropyMapReport {
        limit: report.limit,
        n: report.n,
        d: report.d,
        config: spec,
        records,
    };
    emit_json(&out, args.out.as_deref())
}

#[derive(Serialize)]
struct OracleReport {
    problem: String,
    limit: f64,
    classes: usize,
    dims: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    sample: Option<OracleSample>,
}

#[derive(Serialize)]
struct OracleSample {
    n: usize,
    seed: u64,
    out: String,
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let problem = match args.problem.as_str() {
        "linear1d" => AnalyticProblem::linear_1d(),
        "overlap1d" => AnalyticProblem::overlap_uniform_1d(args.offset)?,
        "full-overlap" => AnalyticProblem::full_overlap_1d(),
        path => {
            let text = std::fs::read_to_string(path)?;
            let spec: ProblemSpec = serde_json::from_str(&text)?;
            AnalyticProblem::from_spec(&spec)?
        }
    };
    let limit = oracle::bayes_limit(&problem)?;
    eprintln!("analytic limit {limit:.6}");
    let sample = match args.sample {
        Some(n) => {
            let out = args.sample_out.as_ref().ok_or_else(|| {
                CliError::usage("--sample requires --sample-out <path.csv>")
            })?;
            let dataset = oracle::sample_problem(&problem, n, args.seed)?;
            io::save_csv_path(&dataset, out)?;
            eprintln!("sampled {n} points to {}", out.display());
            Some(OracleSample { n, seed: args.seed, out: out.display().to_string() })
        }
        None => None,
    };
    let report = OracleReport {
        problem: args.problem.clone(),
        limit,
        classes: problem.num_classes(),
        dims: problem.dims(),
        sample,
    };
    emit_json(&report, args.out.as_deref())
}

fn cmd_overclass(args: OverclassArgs) -> Result<(), CliError> {
    if args.resolutions.contains(&0) {
        return Err(CliError::usage("resolutions must be >= 1"));
    }
    let report = estimator::overclass_check(&args.resolutions, args.points);
    eprintln!(
        "N = {} potential classes, need P >= {}, have {} ({})",
        report.potential_classes,
        report.min_points,
        report.actual_points,
        if report.over_classified { "over-classified" } else { "ok" }
    );
    emit_json(&report, args.out.as_deref())
}
