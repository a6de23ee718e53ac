//! Run configuration.
//!
//! A [`RunConfig`] is read from a TOML file and then overridden by command
//! line flags. Everything that influences an output lives here, so a run is
//! reproducible from the configuration and the input files alone. Every
//! output file carries [`RunConfig::hash`] and the seed in its header.
//!
//! ```toml
//! inputs = ["gdp.csv"]
//! layout = "long"            # or "wide"
//! from = "2000Q1"
//! to = "2007Q4"
//! value_mode = "absolute"    # what the input values are
//! pct_change = false         # convert to percentage changes after loading
//! measures = ["cdm", "ncd"]
//! linkage = "complete"
//! geometry = "squared"        # or "raw"
//! cut_k = 2
//! alphas = [1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0]
//! deltas = [2, 3, 4, 5, 6, 7, 8, 9, 10]
//! regimes = ["paper-regimes"]
//! seed = 2024
//! out_dir = "out"
//! formats = ["csv", "newick", "ascii"]
//! pairs = [["DE", "FR"]]
//!
//! [[derived]]                # series added to every corpus after loading
//! op = "negate"
//! label = "-DE"
//! source = "DE"
//!
//! [[derived]]
//! op = "concat_prefix_suffix"
//! label = "DE|FR"
//! prefix = "DE"
//! suffix = "FR"
//! cut = 16
//!
//! [columns]                  # long layout column names
//! label = "geo"
//! period = "TIME_PERIOD"
//! value = "OBS_VALUE"
//!
//! [perturbation]
//! scale_factor = 2.0
//! shift_sigmas = 1.0
//! noise_sigmas = 0.1
//! absolute_noise = 1.0
//!
//! [params]                   # measure parameter overrides
//! cort_k = 2.0
//! pdc_dim = 4
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tsclust::bench::Grid;
use tsclust::cluster::{Geometry, Linkage};
use tsclust::series::synth::ValueMode;
use tsclust::series::NoiseScale;
use tsclust::{MeasureId, MeasureParams, MeasureSpec, PerturbKind, Perturbation};

use crate::corpus::{DateFilter, Layout, LongColumns};
use crate::error::{CliError, Result};

pub const DEFAULT_SEED: u64 = 2024;
pub const ALL_REGIMES_PRESET: &str = "paper-regimes";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Newick,
    Ascii,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PerturbationConfig {
    pub scale_factor: f64,
    pub shift_sigmas: f64,
    /// Noise sd in units of σ for absolute-valued corpora.
    pub noise_sigmas: f64,
    /// Noise sd for percentage-valued corpora.
    pub absolute_noise: f64,
}

impl Default for PerturbationConfig {
    fn default() -> Self {
        Self {
            scale_factor: Perturbation::DEFAULT_SCALE,
            shift_sigmas: Perturbation::DEFAULT_SHIFT_SIGMAS,
            noise_sigmas: Perturbation::DEFAULT_NOISE_SIGMAS,
            absolute_noise: Perturbation::DEFAULT_ABSOLUTE_NOISE,
        }
    }
}

/// A series built from others in the same corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Derived {
    Negate { label: String, source: String },
    ConcatPrefixSuffix { label: String, prefix: String, suffix: String, cut: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    /// Use the built-in synthetic corpus in this value mode instead of files.
    pub synthetic: Option<ValueMode>,
    pub layout: Layout,
    pub from: Option<String>,
    pub to: Option<String>,
    pub value_mode: ValueMode,
    pub pct_change: bool,
    pub columns: LongColumns,
    /// Empty means the command's default (`cdm` for clustering, all for benchmarks).
    pub measures: Vec<MeasureId>,
    pub params: MeasureParams,
    pub linkage: Linkage,
    pub geometry: Geometry,
    pub cut_k: usize,
    pub alphas: Vec<f64>,
    pub deltas: Vec<u32>,
    pub regimes: Vec<String>,
    pub seed: u64,
    pub perturbation: PerturbationConfig,
    pub out_dir: PathBuf,
    pub formats: Vec<Format>,
    pub pairs: Vec<(String, String)>,
    pub derived: Vec<Derived>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let grid = Grid::standard();
        Self {
            inputs: Vec::new(),
            synthetic: None,
            layout: Layout::Wide,
            from: None,
            to: None,
            value_mode: ValueMode::Absolute,
            pct_change: false,
            columns: LongColumns::default(),
            measures: Vec::new(),
            params: MeasureParams::default(),
            linkage: Linkage::Complete,
            geometry: Geometry::Squared,
            cut_k: 2,
            alphas: grid.alphas,
            deltas: grid.deltas,
            regimes: vec![ALL_REGIMES_PRESET.to_string()],
            seed: DEFAULT_SEED,
            perturbation: PerturbationConfig::default(),
            out_dir: PathBuf::from("out"),
            formats: vec![Format::Csv, Format::Newick, Format::Ascii],
            pairs: Vec::new(),
            derived: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    /// First 16 hex digits of the SHA-256 of the TOML rendering.
    pub fn hash(&self) -> Result<String> {
        let digest = Sha256::digest(self.to_toml()?.as_bytes());
        Ok(digest.iter().take(8).map(|b| format!("{b:02x}")).collect())
    }

    pub fn date_filter(&self) -> DateFilter {
        DateFilter { from: self.from.clone(), to: self.to.clone() }
    }

    pub fn grid(&self) -> Grid {
        Grid { alphas: self.alphas.clone(), deltas: self.deltas.clone() }
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    /// Configured measures, or `fallback` when none are set.
    pub fn measure_specs(&self, fallback: &[MeasureId]) -> Vec<MeasureSpec> {
        let ids = if self.measures.is_empty() { fallback } else { &self.measures };
        let mut seen = Vec::new();
        for &id in ids {
            if !seen.contains(&id) {
                seen.push(id);
            }
        }
        seen.into_iter().map(|id| MeasureSpec::with_params(id, self.params.clone())).collect()
    }

    /// Expands presets and checks applicability, before anything is computed.
    pub fn resolve_regimes(&self, mode: ValueMode) -> Result<Vec<PerturbKind>> {
        let mut out = Vec::new();
        for name in &self.regimes {
            let kinds: Vec<PerturbKind> = if name == ALL_REGIMES_PRESET {
                match mode {
                    ValueMode::Absolute => PerturbKind::ALL_KINDS.to_vec(),
                    ValueMode::Percentage => vec![PerturbKind::None, PerturbKind::Noise],
                }
            } else {
                let k = PerturbKind::parse(name).ok_or_else(|| {
                    CliError::Config(format!("unknown regime `{name}` (none, scale, shift, noise, all, {ALL_REGIMES_PRESET})"))
                })?;
                if mode == ValueMode::Percentage && (k.scales() || k.shifts()) {
                    return Err(CliError::RegimeNotApplicable(name.clone()));
                }
                vec![k]
            };
            for k in kinds {
                if !out.contains(&k) {
                    out.push(k);
                }
            }
        }
        if out.is_empty() {
            return Err(CliError::Config("no regimes configured".into()));
        }
        Ok(out)
    }

    pub fn perturbation(&self, kind: PerturbKind, mode: ValueMode) -> Perturbation {
        let c = &self.perturbation;
        let (noise_level, noise_scale) = match mode {
            ValueMode::Absolute => (c.noise_sigmas, NoiseScale::Sigma),
            ValueMode::Percentage => (c.absolute_noise, NoiseScale::Absolute),
        };
        Perturbation {
            kind,
            scale_factor: c.scale_factor,
            shift_sigmas: c.shift_sigmas,
            noise_level,
            noise_scale,
            seed: self.seed,
        }
    }

    /// Common header line for every output file.
    pub fn header(&self, command: &str) -> Result<String> {
        Ok(format!("tsclust {command} config={} seed={}", self.hash()?, self.seed))
    }
}

/// Parses `start:stop:step`, `start:stop` (step 1) or a comma list.
pub fn parse_float_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || CliError::Config(format!("bad grid `{s}`"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (start, stop, step) = match parts.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1.0),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(bad()),
        };
        if !(step > 0.0) || stop < start {
            return Err(bad());
        }
        // Counting steps keeps values like 1.4 + 3·0.2 exact to print.
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        let decimals = s.split(':').map(|t| t.split('.').nth(1).map_or(0, str::len)).max().unwrap_or(0);
        let round = 10f64.powi(decimals as i32);
        Ok((0..=n).map(|k| ((start + k as f64 * step) * round).round() / round).collect())
    } else {
        s.split(',').map(num).collect()
    }
}

pub fn parse_int_grid(s: &str) -> Result<Vec<u32>> {
    let v = parse_float_grid(s)?;
    v.iter()
        .map(|&x| {
            if x >= 0.0 && x.fract() == 0.0 && x <= f64::from(u32::MAX) {
                Ok(x as u32)
            } else {
                Err(CliError::Config(format!("bad integer grid `{s}`")))
            }
        })
        .collect()
}

/// Parses `A,B`.
pub fn parse_pair(s: &str) -> Result<(String, String)> {
    match s.split_once(',') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
            Ok((a.trim().to_string(), b.trim().to_string()))
        }
        _ => Err(CliError::Config(format!("bad pair `{s}` (expected A,B)"))),
    }
}
