use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shortwide::{AllPairsStrategy, DistanceKind, WeightMode};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "shortwide",
    version,
    about = "Short-and-wide (bottleneck) paths, distance distributions and null ensembles for weighted networks"
)]
pub struct Cli {
    /// Worker threads for per-source searches and ensemble samples.
    #[arg(long, global = true, env = "SHORTWIDE_WORKERS")]
    pub workers: Option<usize>,

    /// Run the built-in checks (same as the `self-test` command).
    #[arg(long)]
    pub self_test: bool,

    /// Directory with user-supplied datasets for the data-dependent checks.
    #[arg(long, requires = "self_test")]
    pub with_data: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// All-pairs geodesic, weighted, bottleneck and minimax-width distances.
    Distances(DistancesArgs),
    /// Survival curves of each all-pairs distance distribution.
    Survival(DistancesArgs),
    /// Gamma fits with goodness of fit.
    Fit(FitArgs),
    /// Random null-model ensembles.
    Ensemble(EnsembleArgs),
    /// Gap-junction capacity and consensus-time bound.
    Neuro(NeuroArgs),
    /// Compare the search algorithms with exhaustive path enumeration.
    Oracle(OracleArgs),
    /// Built-in checks.
    SelfTest(SelfTestArgs),
    /// Wall-clock timings on synthetic graphs (not deterministic).
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Third column is the edge weight.
    Weights,
    /// Third column is a multiplicity m; weight is 1/m.
    Multiplicities,
}

impl From<ModeArg> for WeightMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Weights => WeightMode::Weights,
            ModeArg::Multiplicities => WeightMode::Multiplicities,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    ParallelSssp,
    LabelsetFw,
}

impl From<StrategyArg> for AllPairsStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::ParallelSssp => AllPairsStrategy::ParallelSssp,
            StrategyArg::LabelsetFw => AllPairsStrategy::LabelsetFw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Geodesic,
    Weighted,
    Bottleneck,
    MinimaxWidth,
}

impl From<KindArg> for DistanceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Geodesic => DistanceKind::Geodesic,
            KindArg::Weighted => DistanceKind::Weighted,
            KindArg::Bottleneck => DistanceKind::Bottleneck,
            KindArg::MinimaxWidth => DistanceKind::MinimaxWidth,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Edge list file, or `fixture:<name>` for a bundled graph.
    pub input: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Weights)]
    pub mode: ModeArg,
    /// Analyze the whole graph instead of its giant component.
    #[arg(long)]
    pub whole_graph: bool,
    #[arg(long, value_enum, default_value_t = StrategyArg::ParallelSssp)]
    pub strategy: StrategyArg,
}

#[derive(Debug, Clone, Args)]
pub struct DistancesArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Quantile used for the effective diameter.
    #[arg(long, default_value_t = 0.95)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Edge list file, or `fixture:<name>`.
    #[arg(required_unless_present = "values")]
    pub input: Option<String>,
    /// Fit a raw sample (one number per line) instead of graph distances;
    /// `fixture:gamma` is the bundled gamma(2, 0, 3) sample.
    #[arg(long, conflicts_with = "input")]
    pub values: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Weights)]
    pub mode: ModeArg,
    #[arg(long)]
    pub whole_graph: bool,
    #[arg(long, value_enum, default_value_t = StrategyArg::ParallelSssp)]
    pub strategy: StrategyArg,
    /// Distance notions to fit (default: geodesic, weighted, bottleneck).
    #[arg(long = "kind", value_enum)]
    pub kinds: Vec<KindArg>,
    /// Number of chi-square bins (default: n/50 clamped to 5..20).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Fix the location instead of searching a grid.
    #[arg(long, allow_hyphen_values = true)]
    pub location: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Er,
    DegreeMatched,
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Node count (Erdős–Rényi).
    #[arg(long, default_value_t = 279)]
    pub nodes: usize,
    /// Connection probability (Erdős–Rényi).
    #[arg(long, default_value_t = 0.0133)]
    pub p: f64,
    /// Reference graph: the degree sequence to match, and the comparison target.
    #[arg(long)]
    pub reference: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Weights)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Analyze only the first N samples (all are generated).
    #[arg(long)]
    pub analyze: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2.76)]
    pub exponent: f64,
    #[arg(long, default_value_t = 50)]
    pub max_multiplicity: u32,
    /// Draw multiplicities from the reference graph's histogram of round(1/w).
    #[arg(long, requires = "reference")]
    pub multiplicity_from_reference: bool,
    #[arg(long, value_enum, default_value_t = StrategyArg::ParallelSssp)]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 0.95)]
    pub threshold: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct NeuroArgs {
    /// Ohms.
    #[arg(long, default_value_t = 5e9)]
    pub resistance: f64,
    /// Kelvin.
    #[arg(long, default_value_t = 298.0)]
    pub temperature: f64,
    /// Noise bandwidth and symbol rate, hertz.
    #[arg(long, default_value_t = 1700.0)]
    pub bandwidth: f64,
    /// Absolute refractory period in ms; sets bandwidth to 1000 / value.
    #[arg(long, conflicts_with = "bandwidth")]
    pub refractory_ms: Option<f64>,
    /// Lower signal level, volts.
    #[arg(long, default_value_t = -70e-3, allow_hyphen_values = true)]
    pub v0: f64,
    /// Upper signal level, volts.
    #[arg(long, default_value_t = -35e-3, allow_hyphen_values = true)]
    pub v1: f64,
    /// Effective diameter D_e in hops.
    #[arg(long, default_value_t = 7.0)]
    pub diameter: f64,
    /// Which distance notion the diameter was measured with (recorded only).
    #[arg(long, value_enum, default_value_t = KindArg::Geodesic)]
    pub diameter_kind: KindArg,
    /// Message volume log M, bits.
    #[arg(long, default_value_t = 10.0)]
    pub message_bits: f64,
    /// Parallel junctions per link.
    #[arg(long, default_value_t = 1)]
    pub junctions: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Edge list file, or `fixture:<name>`.
    pub input: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Weights)]
    pub mode: ModeArg,
    /// Enumeration size limit.
    #[arg(long, default_value_t = shortwide::oracle::DEFAULT_MAX_NODES)]
    pub max_nodes: usize,
    /// Report optimal paths for one pair (node names).
    #[arg(long, requires = "target")]
    pub source: Option<String>,
    #[arg(long, requires = "source")]
    pub target: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SelfTestArgs {
    /// Directory with user-supplied datasets for the data-dependent checks.
    #[arg(long)]
    pub with_data: Option<PathBuf>,
    /// Include wall-clock seconds per check.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Sizes as nodes:edges:distinct_weights, comma separated.
    #[arg(long, default_value = "100:400:4,200:800:4,200:800:16")]
    pub sizes: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
