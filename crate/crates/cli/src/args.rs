use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "vectont",
    version,
    about = "Query vector ontologies from the command line"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Schema document (JSON). Inferred from the data file when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub schema: Option<PathBuf>,
    /// Dataset of existing vectors (.csv or .jsonl).
    #[arg(long, global = true, value_name = "PATH")]
    pub data: Option<PathBuf>,
    /// Print a single-line JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Equality tolerance for coordinates.
    #[arg(long, global = true, env = "VECTONT_TOLERANCE", value_name = "FLOAT")]
    pub tolerance: Option<f64>,
    /// Minkowski order: a number >= 1 or `inf`.
    #[arg(long = "r", global = true, value_name = "ORDER", default_value = "2")]
    pub order: String,
    /// Comma-separated per-dimension weights.
    #[arg(long, global = true, value_name = "CSV")]
    pub weights: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Define or inspect schemas.
    #[command(subcommand)]
    Schema(SchemaCmd),
    /// Load, convert and extend datasets.
    #[command(subcommand)]
    Data(DataCmd),
    /// Is the vector in the existence set?
    Exists(VectorArg),
    /// Is the vector a valid point of the space?
    Possible(VectorArg),
    /// Functions of existence.
    #[command(subcommand)]
    Foe(FoeCmd),
    /// Convex regions and parthood.
    #[command(subcommand)]
    Region(RegionCmd),
    /// Minkowski distance between two vectors.
    Dist(DistArgs),
    /// Reconstruction paths.
    #[command(subcommand)]
    Recon(ReconCmd),
    /// Apply moves and snap to the nearest existing member.
    Navigate(NavigateArgs),
    /// The k nearest existing members.
    Nearest(NearestArgs),
    /// Linear dependence between vectors.
    #[command(subcommand)]
    Depend(DependCmd),
    /// Histogram probability-of-existence models.
    #[command(subcommand)]
    Prob(ProbCmd),
}

#[derive(Debug, Args)]
pub struct VectorArg {
    /// Comma-separated coordinates in schema order.
    #[arg(long, allow_hyphen_values = true, value_name = "V")]
    pub vector: Option<String>,
    /// JSON object keyed by dimension name.
    #[arg(long, value_name = "PATH")]
    pub vector_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SchemaCmd {
    /// Build a schema from dimension specs.
    New {
        #[arg(long)]
        name: String,
        /// `name:kind`, `name:kind:LO..HI`, or `name:categorical=a|b|c`.
        #[arg(long = "dim", required = true, value_name = "SPEC")]
        dims: Vec<String>,
        /// Write the schema here as well as printing it.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Describe the active schema.
    Show,
}

#[derive(Debug, Subcommand)]
pub enum DataCmd {
    /// Validate a dataset and report duplicates.
    Load,
    /// Write the dataset to another file (format follows the extension).
    Save {
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Add one vector and write the dataset back.
    Insert {
        #[command(flatten)]
        vector: VectorArg,
        /// Provenance recorded in the `@source` column.
        #[arg(long)]
        source: Option<String>,
        /// Write here instead of overwriting the dataset.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    /// Class text, e.g. `class c(v): x <= v`.
    #[arg(long, value_name = "TEXT")]
    pub class: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub class_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// `name(v1, v2, ...)` or `p1=v1, p2=v2`.
    #[arg(long, allow_hyphen_values = true, value_name = "BINDING")]
    pub bind: String,
}

#[derive(Debug, Subcommand)]
pub enum FoeCmd {
    /// Parse a class and print its canonical form.
    Parse(ClassArgs),
    /// Bind parameters.
    Bind(BoundArgs),
    /// Evaluate a bound class on one vector.
    Eval {
        #[command(flatten)]
        bound: BoundArgs,
        #[command(flatten)]
        vector: VectorArg,
    },
    /// Members satisfying a bound class.
    Extension(BoundArgs),
    /// Fit interval-constant instances along an axis.
    FitConst {
        #[arg(long, value_name = "DIM")]
        value: String,
        #[arg(long, value_name = "DIM")]
        axis: String,
        #[arg(long, default_value_t = vectont::foe::DEFAULT_GAP_FACTOR)]
        gap_factor: f64,
    },
    /// Endurant or perdurant along an axis.
    Classify {
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long, value_name = "DIM")]
        axis: String,
        #[arg(long, default_value_t = vectont::foe::DEFAULT_GAP_FACTOR)]
        gap_factor: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum RegionCmd {
    /// Region spanned by dataset points.
    New {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<String>,
        /// Points file; defaults to --data.
        #[arg(long, value_name = "PATH")]
        points: Option<PathBuf>,
    },
    Contains {
        /// Region literal or a file holding one.
        #[arg(long)]
        region: String,
        #[command(flatten)]
        vector: VectorArg,
    },
    PartOf {
        #[arg(long)]
        part: String,
        #[arg(long)]
        whole: String,
    },
    Overlap {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Distance between generator centroids (uses --r).
    Centrality {
        #[arg(long)]
        part: String,
        #[arg(long)]
        whole: String,
    },
    /// No other member of --data falls inside the subset's hull.
    ConvexIn {
        #[arg(long, value_name = "PATH")]
        subset: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Divide numeric differences by the member range in --data.
    #[arg(long)]
    pub scale: bool,
}

#[derive(Debug, Args)]
pub struct FromTo {
    /// Vector literal or JSON object file.
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
}

#[derive(Debug, Subcommand)]
pub enum ReconCmd {
    Path(FromTo),
    Dist(FromTo),
}

#[derive(Debug, Args)]
pub struct NavigateArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    /// `dim=+X`, `dim=-X` or `dim:=VALUE`; repeatable.
    #[arg(long = "move", value_name = "MOVE", allow_hyphen_values = true)]
    pub moves: Vec<String>,
}

#[derive(Debug, Args)]
pub struct NearestArgs {
    #[command(flatten)]
    pub vector: VectorArg,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum DependCmd {
    /// Rank and dependencies, in file order.
    Rank {
        /// Vectors file; `@source` labels each row.
        #[arg(long, value_name = "PATH")]
        vectors: PathBuf,
    },
    /// Express one vector over the others.
    Express {
        #[arg(long, value_name = "PATH")]
        vectors: PathBuf,
        /// Label of a row in the file, or a vector literal.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProbCmd {
    /// Estimate a model from --data.
    Fit {
        #[arg(long, default_value_t = 10)]
        bins: usize,
        #[arg(long, default_value_t = 0.0)]
        smoothing: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Probability of a vector's cell.
    Query {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[command(flatten)]
        vector: VectorArg,
    },
}
