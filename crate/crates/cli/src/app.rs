//! Command-line surface. Flags override the values read from `--config`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use tsclust::cluster::{Geometry, Linkage};
use tsclust::series::synth::ValueMode;
use tsclust::MeasureId;

use crate::commands::{cmd_benchmark, cmd_cluster, cmd_dist, cmd_pairstage};
use crate::config::{parse_float_grid, parse_int_grid, parse_pair, Format, RunConfig};
use crate::corpus::Layout;
use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "tsclust", version, about = "Time-series dissimilarities, clustering and warp/delay benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pairwise distance matrices, one CSV per measure.
    Dist(CommonArgs),
    /// Hierarchical clustering: Newick, ASCII dendrogram and partition CSV.
    Cluster(CommonArgs),
    /// Warp/delay ratio grid under each perturbation regime.
    Benchmark(CommonArgs),
    /// Merge stage at which each pair first shares a cluster.
    Pairstage(PairArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input CSV files.
    pub inputs: Vec<PathBuf>,
    /// TOML run configuration; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Use the built-in synthetic corpus.
    #[arg(long, value_parser = parse_mode)]
    pub synthetic: Option<ValueMode>,
    #[arg(long, value_parser = parse_layout)]
    pub layout: Option<Layout>,
    /// First period kept, e.g. 2000Q1 or 2000-01.
    #[arg(long)]
    pub from: Option<String>,
    /// Last period kept.
    #[arg(long)]
    pub to: Option<String>,
    /// Value mode of the input data.
    #[arg(long, value_parser = parse_mode)]
    pub value_mode: Option<ValueMode>,
    /// Convert inputs to percentage changes after loading.
    #[arg(long)]
    pub pct_change: bool,
    /// Measure id; repeat for several.
    #[arg(long = "measure", value_parser = parse_measure)]
    pub measures: Vec<MeasureId>,
    #[arg(long, value_parser = parse_linkage)]
    pub linkage: Option<Linkage>,
    /// Apply the recurrence to the input directly instead of squared distances.
    #[arg(long)]
    pub raw_geometry: bool,
    /// Number of groups in the partition CSV; 0 disables the cut.
    #[arg(long)]
    pub cut_k: Option<usize>,
    /// Warp factors: `start:stop:step` or a comma list.
    #[arg(long)]
    pub alpha_grid: Option<String>,
    /// Delays in quarters: `start:stop[:step]` or a comma list.
    #[arg(long)]
    pub delta_grid: Option<String>,
    /// none, scale, shift, noise, all or paper-regimes; repeatable.
    #[arg(long = "regime")]
    pub regimes: Vec<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Output formats; repeatable.
    #[arg(long = "format", value_enum)]
    pub formats: Vec<Format>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Pair of labels `A,B`; repeatable.
    #[arg(long = "pair")]
    pub pairs: Vec<String>,
}

fn parse_mode(s: &str) -> Result<ValueMode, String> {
    match s {
        "absolute" => Ok(ValueMode::Absolute),
        "percentage" => Ok(ValueMode::Percentage),
        _ => Err(format!("expected `absolute` or `percentage`, got `{s}`")),
    }
}

fn parse_layout(s: &str) -> Result<Layout, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_measure(s: &str) -> Result<MeasureId, String> {
    s.parse().map_err(|e: tsclust::Error| e.to_string())
}

fn parse_linkage(s: &str) -> Result<Linkage, String> {
    s.parse().map_err(|e: tsclust::Error| e.to_string())
}

impl CommonArgs {
    /// The config file (or defaults) with every given flag applied.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if !self.inputs.is_empty() {
            c.inputs = self.inputs.clone();
        }
        if self.synthetic.is_some() {
            c.synthetic = self.synthetic;
        }
        if let Some(l) = self.layout {
            c.layout = l;
        }
        if self.from.is_some() {
            c.from = self.from.clone();
        }
        if self.to.is_some() {
            c.to = self.to.clone();
        }
        if let Some(m) = self.value_mode {
            c.value_mode = m;
        }
        c.pct_change |= self.pct_change;
        if !self.measures.is_empty() {
            c.measures = self.measures.clone();
        }
        if let Some(l) = self.linkage {
            c.linkage = l;
        }
        if self.raw_geometry {
            c.geometry = Geometry::Raw;
        }
        if let Some(k) = self.cut_k {
            c.cut_k = k;
        }
        if let Some(g) = &self.alpha_grid {
            c.alphas = parse_float_grid(g)?;
        }
        if let Some(g) = &self.delta_grid {
            c.deltas = parse_int_grid(g)?;
        }
        if !self.regimes.is_empty() {
            c.regimes = self.regimes.clone();
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(d) = &self.out_dir {
            c.out_dir = d.clone();
        }
        if !self.formats.is_empty() {
            c.formats = self.formats.clone();
        }
        Ok(c)
    }
}

impl PairArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = self.common.resolve()?;
        if !self.pairs.is_empty() {
            c.pairs = self.pairs.iter().map(|p| parse_pair(p)).collect::<Result<_>>()?;
        }
        Ok(c)
    }
}

/// Runs one parsed invocation and returns the files written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    match &cli.command {
        Command::Dist(a) => cmd_dist(&a.resolve()?),
        Command::Cluster(a) => cmd_cluster(&a.resolve()?),
        Command::Benchmark(a) => cmd_benchmark(&a.resolve()?),
        Command::Pairstage(a) => cmd_pairstage(&a.resolve()?),
    }
}
