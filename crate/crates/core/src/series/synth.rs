//! Synthetic series: the four artificial waves and seeded stochastic series
//! used as a self-contained benchmark corpus.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{pct_change, Frequency, TimeSeries};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    Sine,
    Triangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Envelope {
    Constant,
    Diverging,
}

/// Default per-point amplitude growth of a diverging envelope.
pub const DEFAULT_DIVERGING_SLOPE: f64 = 0.01;

/// Unit wave template at phase `p ∈ [0, 1)`: both kinds start at 0 and peak at `p = 1/4`.
fn template(kind: WaveKind, p: f64) -> f64 {
    match kind {
        WaveKind::Sine => (2.0 * PI * p).sin(),
        WaveKind::Triangle => {
            if p < 0.25 {
                4.0 * p
            } else if p < 0.75 {
                2.0 - 4.0 * p
            } else {
                4.0 * p - 4.0
            }
        }
    }
}

/// A wave of `periods` full periods sampled at `points_per_period` points,
/// with amplitude 1 or `1 + slope·t`.
pub fn gen_wave(
    kind: WaveKind,
    periods: usize,
    points_per_period: usize,
    envelope: Envelope,
    slope: f64,
) -> Result<TimeSeries> {
    gen_wave_with_phase(kind, periods, points_per_period, envelope, slope, 0.0)
}

/// As [`gen_wave`], with the template shifted by `phase` periods.
pub fn gen_wave_with_phase(
    kind: WaveKind,
    periods: usize,
    points_per_period: usize,
    envelope: Envelope,
    slope: f64,
    phase: f64,
) -> Result<TimeSeries> {
    if periods < 1 || points_per_period < 4 {
        return Err(Error::InvalidParameter("need periods >= 1 and points_per_period >= 4".into()));
    }
    if !slope.is_finite() || !phase.is_finite() {
        return Err(Error::InvalidParameter("slope and phase must be finite".into()));
    }
    let n = periods * points_per_period;
    let values = (0..n)
        .map(|t| {
            let p = ((t % points_per_period) as f64 / points_per_period as f64 + phase).rem_euclid(1.0);
            let amp = match envelope {
                Envelope::Constant => 1.0,
                Envelope::Diverging => 1.0 + slope * t as f64,
            };
            amp * template(kind, p)
        })
        .collect();
    let label = format!(
        "{}_{}",
        match kind {
            WaveKind::Sine => "sine",
            WaveKind::Triangle => "triangle",
        },
        match envelope {
            Envelope::Constant => "constant",
            Envelope::Diverging => "diverging",
        }
    );
    TimeSeries::new(label, Frequency::Monthly, values)
}

/// The four artificial series: sine and triangle, constant and diverging,
/// three periods of 100 monthly points each.
pub fn reference_waves() -> Vec<TimeSeries> {
    let mut out = Vec::with_capacity(4);
    for kind in [WaveKind::Sine, WaveKind::Triangle] {
        for env in [Envelope::Constant, Envelope::Diverging] {
            out.push(gen_wave(kind, 3, 100, env, DEFAULT_DIVERGING_SLOPE).expect("valid wave parameters"));
        }
    }
    out
}

/// `x_t = level + y_t`, `y_t = φ y_{t-1} + ε_t` with standard normal `ε`,
/// started from the stationary distribution.
pub fn ar1(label: &str, frequency: Frequency, len: usize, phi: f64, level: f64, seed: u64) -> Result<TimeSeries> {
    if !(phi.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!("AR(1) coefficient {phi} not stationary")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y: f64 = StandardNormal.sample(&mut rng);
    y /= (1.0 - phi * phi).sqrt();
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        values.push(level + y);
        let e: f64 = StandardNormal.sample(&mut rng);
        y = phi * y + e;
    }
    TimeSeries::new(label, frequency, values)
}

/// Strictly positive geometric random walk `x_t = start · exp(Σ step·ε)`.
pub fn random_walk(label: &str, frequency: Frequency, len: usize, start: f64, step: f64, seed: u64) -> Result<TimeSeries> {
    if !(start > 0.0) {
        return Err(Error::InvalidParameter("random walk start must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = start.ln();
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        values.push(log.exp());
        let e: f64 = StandardNormal.sample(&mut rng);
        log += step * e;
    }
    TimeSeries::new(label, frequency, values)
}

/// Value mode of a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueMode {
    Absolute,
    Percentage,
}

impl ValueMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ValueMode::Absolute => "absolute",
            ValueMode::Percentage => "percentage",
        }
    }
}

/// Length of the stochastic series in [`synthetic_corpus`].
pub const SYNTHETIC_LEN: usize = 300;

/// The four waves plus four AR(1) and four random-walk series (monthly,
/// 300 points). In percentage mode the stochastic series are converted to
/// percentage changes while the waves are kept as they are.
pub fn synthetic_corpus(mode: ValueMode, seed: u64) -> Vec<TimeSeries> {
    let mut out = reference_waves();
    let n = SYNTHETIC_LEN + usize::from(mode == ValueMode::Percentage);
    let phis = [0.3, 0.6, 0.8, 0.95];
    let mut stochastic = Vec::with_capacity(8);
    for (i, phi) in phis.iter().enumerate() {
        let s = seed.wrapping_add(i as u64);
        stochastic.push(ar1(&format!("ar1_{i}"), Frequency::Monthly, n, *phi, 100.0, s).expect("valid AR(1)"));
    }
    for i in 0..4 {
        let s = seed.wrapping_add(100 + i as u64);
        stochastic.push(random_walk(&format!("walk_{i}"), Frequency::Monthly, n, 100.0, 0.01, s).expect("valid walk"));
    }
    for s in stochastic {
        match mode {
            ValueMode::Absolute => out.push(s),
            ValueMode::Percentage => out.push(pct_change(&s).expect("series are bounded away from zero")),
        }
    }
    out
}
