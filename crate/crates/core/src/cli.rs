//! The `hypercover` command line.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags or settings),
//! 2 for data errors (unreadable or malformed inputs, dimension mismatches).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{project, run_benchmark, BenchConfig, Method};
use crate::cover::{build_cover, Cover, CubeStatus, HomogeneityRule};
use crate::data::{load_csv, normalize, read_points_csv, Dataset, DatasetId};
use crate::error::{Error, Result};
use crate::mlp::Mlp;
use crate::network::io::NetworkDocument;
use crate::network::{compile, CompiledNetwork};

#[derive(Debug, Parser)]
#[command(
    name = "hypercover",
    version,
    about = "One-shot ReLU classifiers from hypercube covers"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Base seed for splits, tie-breaks, MNIST subsampling and MLP init.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Minimum daughter extent l (normalized units).
    #[arg(long, global = true)]
    min_length: Option<f64>,
    /// Maximum aspect ratio r*; `inf` disables the limit.
    #[arg(long, global = true)]
    max_aspect: Option<f64>,
    /// Boundary softening length; defaults to l.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Keep this many principal components (fit on the full dataset).
    #[arg(long, global = true)]
    pca_dims: Option<usize>,
    #[arg(long, global = true, default_value_t = 0.7)]
    train_fraction: f64,
    #[arg(long, global = true, default_value_t = 20)]
    replications: usize,
    /// Leave empty leaves unassigned.
    #[arg(long, global = true)]
    no_fill: bool,
    /// How class pairs with no points enter the homogeneity score.
    #[arg(long, global = true, value_enum)]
    rule: Option<RuleArg>,
    /// Write the main artifact here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// `iris`, `wine`, `mnist` or a path to a labeled CSV.
    #[arg(long, global = true, default_value = "iris")]
    dataset: String,
    /// Directory holding the bundled datasets; defaults to $HYPERCOVER_DATA or ./data.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2000)]
    mnist_points: usize,
    /// 0-based label column of a CSV dataset; defaults to the last column.
    #[arg(long, global = true)]
    label_column: Option<usize>,
    /// The CSV dataset has no header row.
    #[arg(long, global = true)]
    no_header: bool,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Cover)]
    method: MethodArg,
    /// MLP training epochs.
    #[arg(long, global = true)]
    epochs: Option<usize>,
    /// Worker threads for replications; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Cover,
    Mlp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RuleArg {
    /// Pairs with both counts zero score 0.
    Literal,
    /// Pairs with both counts zero are skipped.
    ExcludeEmpty,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a cover of the (normalized) dataset and write it as JSON.
    Build {
        /// Also draw the cover; 2D only.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compile a cover JSON file into a network JSON file.
    Compile { cover: PathBuf },
    /// Predict a class for every row of a CSV of points.
    Classify { network: PathBuf, points: PathBuf },
    /// Run replicated 70/30 evaluations. Clock time covers the build or
    /// training step only, not I/O or PCA.
    Bench,
    /// Summarize a cover or network JSON file.
    Inspect { file: PathBuf },
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Build { svg } => build(g, svg.as_deref()),
        Command::Compile { cover } => {
            let cover = Cover::from_json(&read(cover)?)?;
            let epsilon = g.epsilon.unwrap_or(cover.config.epsilon);
            emit(g, &compile(&cover, epsilon)?.to_json())
        }
        Command::Classify { network, points } => classify(g, network, points),
        Command::Bench => bench(g),
        Command::Inspect { file } => emit(g, &inspect(&read(file)?)?),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn emit(g: &GlobalOpts, text: &str) -> Result<(), Failure> {
    match &g.output {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e).into()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn builtin(g: &GlobalOpts) -> Option<DatasetId> {
    match g.dataset.as_str() {
        "iris" => Some(DatasetId::Iris),
        "wine" => Some(DatasetId::Wine),
        "mnist" => Some(DatasetId::Mnist {
            points: g.mnist_points,
        }),
        _ => None,
    }
}

fn load(g: &GlobalOpts) -> Result<Dataset> {
    match builtin(g) {
        Some(id) => {
            let dir = g
                .data_dir
                .clone()
                .unwrap_or_else(DatasetId::default_data_dir);
            id.load(&dir, g.seed)
        }
        None => load_csv(&g.dataset, g.label_column, !g.no_header),
    }
}

/// Presets for the bundled datasets, the library defaults otherwise, then
/// any explicit flags on top.
fn bench_config(g: &GlobalOpts) -> Result<BenchConfig> {
    let method = match g.method {
        MethodArg::Cover => Method::Cover,
        MethodArg::Mlp => Method::Mlp,
    };
    let mut config = match builtin(g) {
        Some(id) => BenchConfig::preset(id, g.pca_dims, method),
        None => BenchConfig::new(g.dataset.clone(), method).with_pca_dims(g.pca_dims),
    };
    config.base_seed = g.seed;
    config.replications = g.replications;
    config.train_fraction = g.train_fraction;
    config.jobs = g.jobs;
    if let Some(l) = g.min_length {
        config.cover.min_length = Some(l);
    }
    if let Some(r) = g.max_aspect {
        config.cover.max_aspect_ratio = r;
    }
    if g.epsilon.is_some() {
        config.cover.epsilon = g.epsilon;
    }
    if g.no_fill {
        config.cover.fill_porosity = false;
    }
    if let Some(rule) = g.rule {
        config.cover.homogeneity_rule = match rule {
            RuleArg::Literal => HomogeneityRule::ZeroForEmptyPairs,
            RuleArg::ExcludeEmpty => HomogeneityRule::ExcludeEmptyPairs,
        };
    }
    if let Some(e) = g.epochs {
        config.mlp.epochs = e;
    }
    Ok(config)
}

fn build(g: &GlobalOpts, svg: Option<&Path>) -> Result<(), Failure> {
    let config = bench_config(g)?;
    let dataset = project(&load(g)?, config.pca_dims)?;
    let (dataset, _) = normalize(&dataset);
    let cover_config = config.cover.resolve(&dataset.points, g.seed)?;
    let cover = build_cover(&dataset.points, &cover_config)?;
    if let Some(path) = svg {
        let drawing = cover.to_svg(&dataset.points)?;
        fs::write(path, drawing).map_err(|e| Error::io(path, e))?;
    }
    emit(g, &cover.to_json())
}

fn classify(g: &GlobalOpts, network: &Path, points: &Path) -> Result<(), Failure> {
    let text = read(network)?;
    let doc = NetworkDocument::from_json(&text)?;
    let predict: Box<dyn Fn(&[f64]) -> Result<usize>> = if doc.epsilon.is_some() {
        let net = CompiledNetwork::from_json(&text)?;
        Box::new(move |x| net.predict(x))
    } else {
        let mlp = Mlp::from_json(&text)?;
        Box::new(move |x| mlp.predict(x))
    };
    let mut out = String::new();
    for (row, x) in read_points_csv(points)?.iter().enumerate() {
        let class = predict(x).map_err(|e| match e {
            Error::DimensionMismatch { expected, found } => Failure::Data(format!(
                "{}: row {} has {found} coordinates but the network takes {expected}",
                points.display(),
                row + 1
            )),
            e => e.into(),
        })?;
        writeln!(out, "{class}").unwrap();
    }
    emit(g, out.trim_end())
}

fn bench(g: &GlobalOpts) -> Result<(), Failure> {
    let config = bench_config(g)?;
    let report = run_benchmark(&load(g)?, &config)?;
    print!("{}", report.to_table());
    match &g.output {
        Some(path) => fs::write(path, report.to_json()).map_err(|e| Error::io(path, e))?,
        None => println!("\n{}", report.to_json()),
    }
    Ok(())
}

fn inspect(text: &str) -> Result<String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::format("$", e.to_string()))?;
    let mut out = String::new();
    if value.get("cubes").is_some() {
        let cover = Cover::from_json(text)?;
        let counts = cover.status_counts();
        writeln!(
            out,
            "cover: {} dims, {} classes, {} leaves",
            cover.n_dims,
            cover.n_classes,
            cover.leaves.len()
        )
        .unwrap();
        writeln!(out, "  homogeneous {}", counts.homogeneous).unwrap();
        writeln!(out, "  violating   {}", counts.violating).unwrap();
        writeln!(out, "  empty       {}", counts.empty).unwrap();
        writeln!(out, "  filled      {}", counts.filled).unwrap();
        let mut per_class = vec![0usize; cover.n_classes];
        for c in &cover.leaves {
            if let Some(k) = c.status.class() {
                per_class[k] += 1;
            }
        }
        writeln!(out, "  leaves per class {per_class:?}").unwrap();
        let unassigned = cover
            .leaves
            .iter()
            .filter(|c| matches!(c.status, CubeStatus::Empty))
            .count();
        if unassigned > 0 {
            writeln!(out, "  {unassigned} empty leaves will not be compiled").unwrap();
        }
    } else if value.get("layers").is_some() {
        let doc = NetworkDocument::from_json(text)?;
        let kind = if doc.epsilon.is_some() {
            "compiled network"
        } else {
            "mlp"
        };
        writeln!(
            out,
            "{kind}: {} inputs, {} classes",
            doc.n_inputs, doc.n_classes
        )
        .unwrap();
        if let Some(eps) = doc.epsilon {
            writeln!(out, "  epsilon {eps}").unwrap();
            let sizes: Vec<usize> = doc.class_blocks.iter().map(Vec::len).collect();
            writeln!(out, "  cubes per class {sizes:?}").unwrap();
        }
        for (k, l) in doc.layers.iter().enumerate() {
            writeln!(
                out,
                "  layer {}: {:>8} x {:<6} {:<8} nnz {}",
                k + 1,
                l.outputs(),
                l.inputs(),
                l.activation.name(),
                l.weights.nnz()
            )
            .unwrap();
        }
    } else {
        return Err(Error::format(
            "$",
            "neither a cover (cubes) nor a network (layers)",
        ));
    }
    Ok(out.trim_end().to_string())
}
