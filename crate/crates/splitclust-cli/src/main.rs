//! Command-line orchestration: ingest data, run clustering, compute metrics,
//! emit reports.

mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use splitclust::data::{assign, CsvOptions, DataError, Dataset};
use splitclust::formats::{self, FormatError};
use splitclust::splitter::{run, RunStatus, SplitConfig, SplitError};
use splitclust::synth::{generate, GenConfig, GenError};
use splitclust::validate::{
    accuracy, adjusted_rand, relative_error, validity, DunnIndex, ValidateError,
};

use report::{
    summary_csv, ConfigEcho, DatasetInfo, ExternalScores, LevelEntry, ReportDocument, Timings,
    SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(
    name = "splitclust",
    version,
    about = "Incremental split-based clustering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a CSV dataset incrementally up to --kmax centers.
    Cluster(ClusterArgs),
    /// Generate synthetic three-cluster datasets with outliers.
    Generate(GenerateArgs),
    /// Score a stored (dataset, centers, labels) triple.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct ClusterArgs {
    /// Input CSV dataset.
    #[arg(long)]
    input: PathBuf,
    /// Field delimiter.
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Skip one header row.
    #[arg(long)]
    header: bool,
    /// Number of clusters to reach.
    #[arg(long)]
    kmax: usize,
    /// Starting points for each split's auxiliary problem.
    #[arg(long, default_value_t = 3)]
    starts: usize,
    /// Sample size for mean-of-random-points starts.
    #[arg(long, default_value_t = 10)]
    m1: usize,
    /// Sample size for distance-checked starts.
    #[arg(long, default_value_t = 7)]
    m2: usize,
    /// Smallest cluster that may be split.
    #[arg(long, default_value_t = 5)]
    min_split: usize,
    /// Seed for all sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// True labels (one integer per line) for external validation.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Reference objectives as CSV rows `k,f_best`.
    #[arg(long)]
    fbest: Option<PathBuf>,
    /// Multiplier applied to every reference objective.
    #[arg(long, default_value_t = 1.0)]
    fbest_scale: f64,
    /// Compute Davies-Bouldin and Dunn indices per level.
    #[arg(long)]
    indices: bool,
    /// Report file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the final centers as CSV, one center per row.
    #[arg(long)]
    centers_out: Option<PathBuf>,
    /// Write a per-level CSV summary table.
    #[arg(long)]
    summary_out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Outlier share of the third cluster: 0, 0.1, 0.2, 0.3, 0.4 or 0.5.
    #[arg(long)]
    outliers: f64,
    /// Number of datasets to generate.
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory for the CSV and label files.
    #[arg(long)]
    outdir: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    /// Input CSV dataset.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = ",")]
    delimiter: char,
    #[arg(long)]
    header: bool,
    /// Centers as CSV, one center per row.
    #[arg(long)]
    centers: PathBuf,
    /// True labels for external scores.
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct AppError {
    code: &'static str,
    message: String,
    exit_code: i32,
}

impl AppError {
    fn new(code: &'static str, message: String, exit_code: i32) -> Self {
        Self {
            code,
            message,
            exit_code,
        }
    }
}

impl From<DataError> for AppError {
    fn from(err: DataError) -> Self {
        let code = match &err {
            DataError::Io(e) if e.kind() == std::io::ErrorKind::NotFound => "E_IO_NOT_FOUND",
            DataError::Io(_) => "E_IO",
            DataError::ParseError { .. } | DataError::RaggedRows { .. } | DataError::EmptyFile => {
                "E_PARSE"
            }
            DataError::DimensionMismatch { .. } => "E_DIM",
            DataError::Invalid(_) => "E_DATA",
        };
        AppError::new(code, err.to_string(), 2)
    }
}

impl From<FormatError> for AppError {
    fn from(err: FormatError) -> Self {
        match err {
            FormatError::Data(inner) => inner.into(),
            FormatError::Io(e) if e.kind() == std::io::ErrorKind::NotFound => {
                AppError::new("E_IO_NOT_FOUND", e.to_string(), 2)
            }
            FormatError::Io(e) => AppError::new("E_IO", e.to_string(), 2),
            other => AppError::new("E_PARSE", other.to_string(), 2),
        }
    }
}

impl From<SplitError> for AppError {
    fn from(err: SplitError) -> Self {
        match &err {
            SplitError::Solver(_) => AppError::new("E_SOLVER", err.to_string(), 3),
            SplitError::KMaxExceedsPoints { .. } => AppError::new("E_KMAX", err.to_string(), 2),
            SplitError::InvalidConfig(_) => AppError::new("E_CONFIG", err.to_string(), 2),
            _ => AppError::new("E_DATA", err.to_string(), 2),
        }
    }
}

impl From<GenError> for AppError {
    fn from(err: GenError) -> Self {
        match err {
            GenError::InvalidFraction(_) => AppError::new("E_FRACTION", err.to_string(), 2),
            GenError::Data(inner) => inner.into(),
        }
    }
}

impl From<ValidateError> for AppError {
    fn from(err: ValidateError) -> Self {
        let code = match &err {
            ValidateError::LengthMismatch { .. } | ValidateError::Inconsistent(_) => "E_DIM",
            _ => "E_VALIDATE",
        };
        AppError::new(code, err.to_string(), 2)
    }
}

impl From<std::io::Error> for AppError {
    fn from(err: std::io::Error) -> Self {
        let code = if err.kind() == std::io::ErrorKind::NotFound {
            "E_IO_NOT_FOUND"
        } else {
            "E_IO"
        };
        AppError::new(code, err.to_string(), 2)
    }
}

fn emit(doc: &ReportDocument, out: Option<&Path>) -> Result<(), AppError> {
    let text = serde_json::to_string_pretty(doc).expect("report serializes");
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_cluster(args: &ClusterArgs) -> Result<(), AppError> {
    let init_clock = Instant::now();
    let opts = CsvOptions {
        delimiter: args.delimiter,
        has_header: args.header,
    };
    let data = Dataset::load_csv(&args.input, &opts)?;
    let true_labels = match &args.labels {
        Some(path) => {
            let raw = formats::read_labels(path)?;
            if raw.len() != data.m() {
                return Err(AppError::new(
                    "E_DIM",
                    format!("{} labels for {} points", raw.len(), data.m()),
                    2,
                ));
            }
            Some(formats::compact_labels(&raw))
        }
        None => None,
    };
    let fbest: BTreeMap<usize, f64> = match &args.fbest {
        Some(path) => formats::read_fbest(path)?
            .into_iter()
            .map(|(k, f)| (k, f * args.fbest_scale))
            .collect(),
        None => BTreeMap::new(),
    };
    let t_init = init_clock.elapsed().as_secs_f64();

    let cfg = SplitConfig {
        starts: args.starts,
        sample_m1: args.m1,
        sample_m2: args.m2,
        min_split_size: args.min_split,
        seed: args.seed,
        ..SplitConfig::new(args.kmax)
    };
    let run_report = run(&data, &cfg)?;

    let mut levels = Vec::with_capacity(run_report.levels.len());
    for level in &run_report.levels {
        let mut entry = LevelEntry {
            k: level.k,
            f_k: level.objective,
            t_k: level.elapsed_seconds,
            split_cluster: level.split_cluster,
            degenerate_split: level.degenerate_split,
            e_k: None,
            dbi: None,
            di: None,
            index_status: None,
        };
        if let Some(&fb) = fbest.get(&level.k) {
            entry.e_k = Some(relative_error(level.objective, fb)?);
        }
        if args.indices {
            if level.k < 2 {
                entry.index_status = Some("K_TOO_SMALL".into());
            } else {
                let assignment = assign(&data, &level.centers)?;
                match validity(&data, &assignment, &level.centers) {
                    Ok(v) => {
                        entry.dbi = Some(v.dbi);
                        match v.dunn {
                            DunnIndex::Finite(d) => entry.di = Some(d),
                            DunnIndex::Unbounded => {
                                entry.index_status = Some("DI_UNBOUNDED".into())
                            }
                        }
                    }
                    Err(e) => entry.index_status = Some(format!("UNAVAILABLE: {e}")),
                }
            }
        }
        levels.push(entry);
    }

    let external = match &true_labels {
        Some(truth) => {
            let last = run_report.levels.last().expect("at least one level");
            let assignment = assign(&data, &last.centers)?;
            Some(ExternalScores {
                accuracy: accuracy(truth, assignment.labels())?,
                ari: adjusted_rand(truth, assignment.labels())?,
            })
        }
        None => None,
    };

    if let Some(path) = &args.centers_out {
        let last = run_report.levels.last().expect("at least one level");
        formats::write_centers(path, &last.centers)?;
    }
    if let Some(path) = &args.summary_out {
        std::fs::write(path, summary_csv(&levels))?;
    }

    let t_last = levels.last().map_or(0.0, |l| l.t_k);
    let doc = ReportDocument {
        schema_version: SCHEMA_VERSION.into(),
        dataset: Some(DatasetInfo {
            path: args.input.display().to_string(),
            m: data.m(),
            n: data.n(),
        }),
        config: Some(ConfigEcho {
            k_max: args.kmax,
            starts: args.starts,
            m1: args.m1,
            m2: args.m2,
            min_split: args.min_split,
            distance_factor: cfg.distance_factor,
            max_distance_retries: cfg.max_distance_retries,
            seed: args.seed,
        }),
        timings: Some(Timings {
            t_init,
            t_total: t_init + t_last,
        }),
        levels,
        external,
        status: Some(match run_report.status {
            RunStatus::Complete => "complete".into(),
            RunStatus::NoSplittableCluster { at_k } => {
                format!("no_splittable_cluster_at_k={at_k}")
            }
        }),
        error: None,
    };
    emit(&doc, args.out.as_deref())
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), AppError> {
    std::fs::create_dir_all(&args.outdir)?;
    let cfg = GenConfig {
        outlier_fraction: args.outliers,
        n_datasets: args.count,
        seed: args.seed,
        ..GenConfig::default()
    };
    let percent = (args.outliers * 100.0).round() as usize;
    for index in 0..args.count {
        let (data, labels) = generate(&cfg, index)?;
        let base = args.outdir.join(format!("sim_o{percent}_{index}"));
        let mut csv = String::with_capacity(data.m() * 16);
        for i in 0..data.m() {
            let row: Vec<String> = data.row(i).iter().map(|v| format!("{v:?}")).collect();
            csv.push_str(&row.join(","));
            csv.push('\n');
        }
        std::fs::write(base.with_extension("csv"), csv)?;
        formats::write_labels(base.with_extension("labels.txt"), &labels)?;
    }
    println!(
        "wrote {} datasets ({percent}% outliers) to {}",
        args.count,
        args.outdir.display()
    );
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), AppError> {
    let opts = CsvOptions {
        delimiter: args.delimiter,
        has_header: args.header,
    };
    let data = Dataset::load_csv(&args.input, &opts)?;
    let centers = formats::read_centers(&args.centers)?;
    if centers.n() != data.n() {
        return Err(AppError::new(
            "E_DIM",
            format!(
                "centers have {} features but the dataset has {}",
                centers.n(),
                data.n()
            ),
            2,
        ));
    }
    let assignment = assign(&data, &centers)?;

    let mut entry = LevelEntry {
        k: centers.k(),
        f_k: assignment.sq_dists().iter().sum(),
        t_k: 0.0,
        split_cluster: None,
        degenerate_split: false,
        e_k: None,
        dbi: None,
        di: None,
        index_status: None,
    };
    if centers.k() < 2 {
        entry.index_status = Some("K_TOO_SMALL".into());
    } else {
        match validity(&data, &assignment, &centers) {
            Ok(v) => {
                entry.dbi = Some(v.dbi);
                match v.dunn {
                    DunnIndex::Finite(d) => entry.di = Some(d),
                    DunnIndex::Unbounded => entry.index_status = Some("DI_UNBOUNDED".into()),
                }
            }
            Err(e) => entry.index_status = Some(format!("UNAVAILABLE: {e}")),
        }
    }

    let external = match &args.labels {
        Some(path) => {
            let raw = formats::read_labels(path)?;
            if raw.len() != data.m() {
                return Err(AppError::new(
                    "E_DIM",
                    format!("{} labels for {} points", raw.len(), data.m()),
                    2,
                ));
            }
            let truth = formats::compact_labels(&raw);
            Some(ExternalScores {
                accuracy: accuracy(&truth, assignment.labels())?,
                ari: adjusted_rand(&truth, assignment.labels())?,
            })
        }
        None => None,
    };

    let doc = ReportDocument {
        schema_version: SCHEMA_VERSION.into(),
        dataset: Some(DatasetInfo {
            path: args.input.display().to_string(),
            m: data.m(),
            n: data.n(),
        }),
        levels: vec![entry],
        external,
        status: Some("complete".into()),
        ..ReportDocument::empty()
    };
    emit(&doc, args.out.as_deref())
}

fn main() {
    let cli = Cli::parse();
    let (result, out_path) = match &cli.command {
        Command::Cluster(args) => (cmd_cluster(args), args.out.clone()),
        Command::Generate(args) => (cmd_generate(args), None),
        Command::Validate(args) => (cmd_validate(args), args.out.clone()),
    };
    if let Err(err) = result {
        let doc = ReportDocument::error(err.code, err.message.clone());
        let text = serde_json::to_string_pretty(&doc).expect("error report serializes");
        match &out_path {
            Some(path) => {
                let _ = std::fs::write(path, text);
            }
            None => println!("{text}"),
        }
        eprintln!("error[{}]: {}", err.code, err.message);
        std::process::exit(err.exit_code);
    }
}
