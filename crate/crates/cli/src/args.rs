use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "zeta-moments", version, about = "Moments of the zeta function on the critical line")]
pub struct Cli {
    /// Flat `key = value` file; command-line flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: available cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Isolate and refine zeros, write a zero file.
    Zeros(ZerosArgs),
    /// Block moments of |ζ|^{2k} between consecutive zeros.
    Moments(MomentsArgs),
    /// Moment predictions and their constants.
    Predict(PredictArgs),
    /// Empirical moments divided by predictions.
    Ratio(RatioArgs),
    /// Analyses over a block file.
    Stats(StatsArgs),
    /// Shifted fourth moments beside the kernel K(T;α).
    Shifted(ShiftedArgs),
    /// Local-model (HP/EHP) accuracy experiments.
    Localmodel(LocalModelArgs),
}

/// Where zeros come from: a height range, a zero-index range, or a file
/// (optionally restricted to an index range).
#[derive(Args, Debug, Clone, Default)]
pub struct ZeroSource {
    /// Height range `lo:hi`.
    #[arg(long, conflicts_with = "zero_index_range")]
    pub range: Option<String>,
    /// Inclusive 1-based zero-index range `a:b`.
    #[arg(long)]
    pub zero_index_range: Option<String>,
    #[arg(long, conflicts_with = "range")]
    pub zero_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub source: ZeroSource,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub source: ZeroSource,
    /// Exponents `2k`: a list `2,4` or a grid `start:end:step`.
    #[arg(long, default_value = "2,4")]
    pub two_k: String,
    /// Intervals per block.
    #[arg(long, default_value_t = 1000)]
    pub block_size: usize,
    #[arg(long, default_value_t = 2048)]
    pub romberg_cap: usize,
    /// Midpoint |ζ| at or below which the HP model is used.
    #[arg(long, default_value_t = 7.0)]
    pub hp_threshold: f64,
    /// Zeros in the HP window (half on each side).
    #[arg(long, default_value_t = 1000)]
    pub hp_window: usize,
    /// Integrate every interval directly.
    #[arg(long)]
    pub no_hp: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictMode {
    /// Full polynomial P_k.
    Full,
    /// Leading term only.
    Leading,
    /// Random-matrix fourth-moment polynomial.
    Rmt4,
    /// CUE characteristic-polynomial moment.
    Cue,
}

#[derive(Args, Debug, Clone)]
pub struct PredictArgs {
    #[arg(long, value_enum, default_value_t = PredictMode::Full)]
    pub mode: PredictMode,
    /// Height `T` (exact decimal).
    #[arg(long, conflicts_with = "range")]
    pub t: Option<String>,
    /// Height range `lo:hi` (exact decimals); prints means over it.
    #[arg(long)]
    pub range: Option<String>,
    /// Values of `k`: a list `1,2,3` or an inclusive range `1:8`.
    #[arg(long, default_value = "1:2")]
    pub k: String,
    #[arg(long)]
    pub coeff_file: Option<PathBuf>,
    /// Matrix size for CUE mode (default: nearest integer to log(T/2π)).
    #[arg(long)]
    pub cue_n: Option<u64>,
    /// Print the a(k), g(k)/k²! table instead.
    #[arg(long)]
    pub constants: bool,
    /// Significant digits printed.
    #[arg(long, default_value_t = 3)]
    pub digits: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct RatioArgs {
    #[arg(long)]
    pub block_file: PathBuf,
    #[arg(long)]
    pub coeff_file: Option<PathBuf>,
    #[arg(long, default_value = "2,4")]
    pub two_k: String,
    /// Records per ratio sample, comma separated.
    #[arg(long, default_value = "1")]
    pub groups: String,
    #[arg(long)]
    pub leading_only: bool,
    /// Use the prediction itself as numerator (every ratio must be 1).
    #[arg(long)]
    pub self_check: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    MomentsOfMoments,
    LogRatio,
    Autocov,
    Extremes,
}

#[derive(Args, Debug, Clone)]
pub struct StatsArgs {
    #[arg(long)]
    pub block_file: PathBuf,
    #[arg(long, value_enum)]
    pub analysis: Analysis,
    #[arg(long, default_value = "2")]
    pub two_k: String,
    #[arg(long)]
    pub coeff_file: Option<PathBuf>,
    #[arg(long)]
    pub leading_only: bool,
    /// Records per ratio sample.
    #[arg(long, default_value_t = 1)]
    pub group: usize,
    #[arg(long, default_value_t = 40)]
    pub max_lag: usize,
    #[arg(long, default_value_t = 10)]
    pub p_max: u32,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    /// Seed of the permutation control.
    #[arg(long, default_value_t = 20240101)]
    pub seed: u64,
    /// Plot-data file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ShiftedArgs {
    #[command(flatten)]
    pub source: ZeroSource,
    /// Shifts `start:end:step` or a list.
    #[arg(long, default_value = "0:1.5:0.03")]
    pub alpha_grid: String,
    #[arg(long, default_value_t = 2048)]
    pub romberg_cap: usize,
    /// Figure name in the plot-data header.
    #[arg(long, default_value = "smg1")]
    pub figure: String,
    /// Plot data `(α, ratio)`; the kernel goes to `<out>.kernel`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct LocalModelArgs {
    #[command(flatten)]
    pub source: ZeroSource,
    /// Models `hp:M`, `ehp:M:X` (raw) or `nehp:M:X` (normalized), comma separated.
    #[arg(long, default_value = "hp:16,hp:256,ehp:256:6,nehp:256:6")]
    pub models: String,
    /// Intervals per experiment.
    #[arg(long, default_value_t = 10)]
    pub intervals: usize,
    /// Consecutive experiments.
    #[arg(long, default_value_t = 10)]
    pub experiments: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
