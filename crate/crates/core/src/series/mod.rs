//! Time-series values and the windows the benchmark compares.
//!
//! For a series `X` of length `T` and a warp factor `α ≥ 1`, three windows of
//! length `⌊T/α⌋` are built: the *base* prefix, the *delayed* window starting
//! `δ` points later, and the *warped* series whose i-th point averages the
//! stretch `[(i-1)α, iα)` of the original time axis.

mod perturb;
pub mod synth;
mod transform;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use perturb::{perturb, perturb_with_sigma, NoiseScale, PerturbKind, Perturbation};
pub use transform::{concat_prefix_suffix, negate, pct_change, transform_series, Transform};

/// Sampling frequency of a series. Abstract series follow the quarterly rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frequency {
    Quarterly,
    Monthly,
    Abstract,
}

impl Frequency {
    /// Points per quarter of delay.
    pub fn points_per_quarter(self) -> usize {
        match self {
            Frequency::Monthly => 3,
            Frequency::Quarterly | Frequency::Abstract => 1,
        }
    }
}

/// An immutable, labelled sequence of finite observations (length ≥ 2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    label: String,
    frequency: Frequency,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(label: impl Into<String>, frequency: Frequency, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { label, index });
        }
        if values.len() < 2 {
            return Err(Error::DegenerateSeries { label, len: values.len() });
        }
        Ok(Self { label, frequency, values })
    }

    /// Same label and frequency, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.label.clone(), self.frequency, values)
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        self.label = label;
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn frequency(&self) -> Frequency {
        self.frequency
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }

    /// Population standard deviation.
    pub fn std_dev(&self) -> f64 {
        std_dev(&self.values)
    }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub(crate) fn std_dev(xs: &[f64]) -> f64 {
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64).sqrt()
}

/// Warp factor and delay (in quarters) for one benchmark cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WarpDelayParams {
    pub alpha: f64,
    pub delta_quarters: u32,
}

impl WarpDelayParams {
    pub fn new(alpha: f64, delta_quarters: u32) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { alpha, delta_quarters })
    }

    /// Delay in data points: `Δ` for quarterly data, `3Δ` for monthly.
    pub fn delay_points(&self, frequency: Frequency) -> usize {
        self.delta_quarters as usize * frequency.points_per_quarter()
    }

    /// True when the delayed window fits inside a series of `len` points.
    pub fn fits(&self, len: usize, frequency: Frequency) -> bool {
        window_len(len, self.alpha) + self.delay_points(frequency) <= len
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidWarp(alpha))
    }
}

/// `⌊T/α⌋`.
pub fn window_len(len: usize, alpha: f64) -> usize {
    (len as f64 / alpha).floor() as usize
}

fn checked_window(x: &TimeSeries, alpha: f64) -> Result<usize> {
    check_alpha(alpha)?;
    let n = window_len(x.len(), alpha);
    if n < 2 {
        return Err(Error::DegenerateSeries { label: x.label.clone(), len: n });
    }
    Ok(n)
}

/// The prefix `X_1..X_⌊T/α⌋`.
pub fn base_series(x: &TimeSeries, alpha: f64) -> Result<TimeSeries> {
    let n = checked_window(x, alpha)?;
    x.with_values(x.values[..n].to_vec())
}

/// The window `X_{1+δ}..X_{⌊T/α⌋+δ}`; `delay` is in data points.
pub fn delayed_series(x: &TimeSeries, alpha: f64, delay: usize) -> Result<TimeSeries> {
    let n = checked_window(x, alpha)?;
    if n + delay > x.len() {
        return Err(Error::DelayOutOfRange { window: n, delay, len: x.len() });
    }
    x.with_values(x.values[delay..delay + n].to_vec())
}

/// Overlap weight `|[j-1, j) ∩ [(i-1)α, iα)|` of input point `j` on output
/// point `i` (both 1-based).
pub fn warp_weight(i: usize, j: usize, alpha: f64) -> f64 {
    let lo = ((i - 1) as f64 * alpha).max((j - 1) as f64);
    let hi = (i as f64 * alpha).min(j as f64);
    (hi - lo).max(0.0)
}

/// The series squeezed by `α`: point `i` is `(1/α) Σ_j w_ij X_j`.
pub fn warped_series(x: &TimeSeries, alpha: f64) -> Result<TimeSeries> {
    let n = checked_window(x, alpha)?;
    let values = (1..=n)
        .map(|i| {
            let start = ((i - 1) as f64 * alpha).floor() as usize + 1;
            let end = ((i as f64 * alpha).ceil() as usize).min(x.len());
            let acc: f64 = (start..=end)
                .map(|j| warp_weight(i, j, alpha) * x.values[j - 1])
                .sum();
            acc / alpha
        })
        .collect();
    x.with_values(values)
}
