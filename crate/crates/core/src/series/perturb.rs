use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::TimeSeries;
use crate::{Error, Result};

/// Which perturbation is applied to the delayed window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbKind {
    None,
    Scale,
    Shift,
    Noise,
    All,
}

impl PerturbKind {
    pub const ALL_KINDS: [PerturbKind; 5] =
        [PerturbKind::None, PerturbKind::Scale, PerturbKind::Shift, PerturbKind::Noise, PerturbKind::All];

    pub fn as_str(self) -> &'static str {
        match self {
            PerturbKind::None => "none",
            PerturbKind::Scale => "scale",
            PerturbKind::Shift => "shift",
            PerturbKind::Noise => "noise",
            PerturbKind::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL_KINDS.into_iter().find(|k| k.as_str() == s)
    }

    pub fn scales(self) -> bool {
        matches!(self, PerturbKind::Scale | PerturbKind::All)
    }

    pub fn shifts(self) -> bool {
        matches!(self, PerturbKind::Shift | PerturbKind::All)
    }

    pub fn adds_noise(self) -> bool {
        matches!(self, PerturbKind::Noise | PerturbKind::All)
    }
}

/// Whether the noise level is a multiple of the reference standard deviation
/// or an absolute standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseScale {
    Sigma,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub kind: PerturbKind,
    pub scale_factor: f64,
    pub shift_sigmas: f64,
    /// Noise standard deviation, in units of σ or absolute per `noise_scale`.
    pub noise_level: f64,
    pub noise_scale: NoiseScale,
    pub seed: u64,
}

impl Perturbation {
    pub const DEFAULT_SCALE: f64 = 2.0;
    pub const DEFAULT_SHIFT_SIGMAS: f64 = 1.0;
    pub const DEFAULT_NOISE_SIGMAS: f64 = 0.1;
    pub const DEFAULT_ABSOLUTE_NOISE: f64 = 1.0;

    /// Defaults for absolute-valued corpora.
    pub fn absolute(kind: PerturbKind, seed: u64) -> Self {
        Self {
            kind,
            scale_factor: Self::DEFAULT_SCALE,
            shift_sigmas: Self::DEFAULT_SHIFT_SIGMAS,
            noise_level: Self::DEFAULT_NOISE_SIGMAS,
            noise_scale: NoiseScale::Sigma,
            seed,
        }
    }

    /// Defaults for percentage-change corpora: noise is not scaled by σ.
    pub fn percentage(kind: PerturbKind, seed: u64) -> Self {
        Self {
            noise_level: Self::DEFAULT_ABSOLUTE_NOISE,
            noise_scale: NoiseScale::Absolute,
            ..Self::absolute(kind, seed)
        }
    }

    pub fn none() -> Self {
        Self::absolute(PerturbKind::None, 0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.scale_factor == 0.0 || !self.scale_factor.is_finite() {
            return Err(Error::InvalidScale);
        }
        if !self.shift_sigmas.is_finite() || !self.noise_level.is_finite() || self.noise_level < 0.0 {
            return Err(Error::InvalidParameter("shift and noise levels must be finite, noise >= 0".into()));
        }
        Ok(())
    }

    /// Whether applying this perturbation needs a non-zero reference σ.
    pub fn needs_sigma(&self) -> bool {
        self.kind.shifts() || (self.kind.adds_noise() && self.noise_scale == NoiseScale::Sigma)
    }
}

/// Applies `p` using the standard deviation of `x` itself as reference.
pub fn perturb(x: &TimeSeries, p: &Perturbation) -> Result<TimeSeries> {
    perturb_with_sigma(x, p, x.std_dev())
}

/// Applies `p` with an explicit reference σ, normally that of the full
/// original series the window `x` was cut from. Order: scale, shift, noise.
pub fn perturb_with_sigma(x: &TimeSeries, p: &Perturbation, sigma: f64) -> Result<TimeSeries> {
    p.validate()?;
    if p.kind == PerturbKind::None {
        return Ok(x.clone());
    }
    if p.needs_sigma() && !(sigma > 0.0) {
        return Err(Error::ConstantSeries(x.label().to_string()));
    }
    let mut values = x.values().to_vec();
    if p.kind.scales() {
        values.iter_mut().for_each(|v| *v *= p.scale_factor);
    }
    if p.kind.shifts() {
        let offset = p.shift_sigmas * sigma;
        values.iter_mut().for_each(|v| *v += offset);
    }
    if p.kind.adds_noise() {
        let sd = match p.noise_scale {
            NoiseScale::Sigma => p.noise_level * sigma,
            NoiseScale::Absolute => p.noise_level,
        };
        let normal = Normal::new(0.0, sd).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(p.seed, x.label()));
        values.iter_mut().for_each(|v| *v += normal.sample(&mut rng));
    }
    x.with_values(values)
}

/// Per-series noise stream: FNV-1a of the label folded into the master seed.
fn stream_seed(seed: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}
