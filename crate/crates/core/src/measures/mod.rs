//! Dissimilarity measures between two equal-length series.
//!
//! Every measure is a pure function of `(spec, x, y)`. Ids are the stable
//! strings used on the command line and in report columns.
//!
//! | id | definition |
//! |----|------------|
//! | `euclidean` | `sqrt(Σ (x_t - y_t)²)` |
//! | `manhattan` | `Σ |x_t - y_t|` |
//! | `infnorm` | `max |x_t - y_t|` |
//! | `ccor` | `sqrt((1 - cc_0) / Σ_{k=1..K} [(1 - cc_k) + (1 - cc_{-k})])`, `K = T-1` |
//! | `sts` | Euclidean distance between first differences |
//! | `dtw` | unconstrained DTW, cost `|x_i - y_j|`, unit symmetric steps |
//! | `fourier` | `sqrt(Σ_{k=0..⌊T/2⌋} |X_k - Y_k|²)` over DFT coefficients |
//! | `acf` | Euclidean distance between autocorrelations at lags `1..L`, `L = min(25, T-2)` |
//! | `pacf` | as `acf` with Durbin–Levinson partial autocorrelations |
//! | `cdm` | `C(xy) / (C(x) + C(y))`, DEFLATE sizes |
//! | `ncd` | `(C(xy) - min(C(x),C(y))) / max(C(x),C(y))`, clamped at 0 |
//! | `cid` | `L2 · max(CE) / max(min(CE), 1e-12)`, `CE(s) = sqrt(Σ Δs²)` |
//! | `cor` | `sqrt(2 (1 - ρ))` |
//! | `cort` | `2 / (1 + exp(k·CORT)) · L2`, `k = 2` |
//! | `per` | Euclidean distance between periodograms at `k = 1..⌊T/2⌋` |
//! | `int.per` | L1 distance between normalised cumulative periodograms |
//! | `pdc` | squared Hellinger divergence of ordinal-pattern distributions, `m = 4` |

mod autocorr;
mod compression;
mod correlation;
mod dtw;
mod lp;
mod ordinal;
mod shape;
mod spectral;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, TimeSeries};

pub use autocorr::{acf, d_acf, d_pacf, default_lag_max, pacf};
pub use compression::{
    compressed_size, d_cdm, d_ncd, serialize, Symbolization, DEFAULT_SAX_ALPHABET, DEFAULT_SIGNIFICANT_DIGITS,
};
pub use correlation::{cross_correlation, d_ccor, d_cor, d_cort, pearson, temporal_correlation, DEFAULT_CORT_K};
pub use dtw::d_dtw;
pub use lp::{d_lp, Norm};
pub use ordinal::{d_pdc, ordinal_distribution, DEFAULT_PDC_DIM};
pub use shape::{complexity_estimate, d_cid, d_sts, CID_EPSILON};
pub use spectral::{d_fourier, d_int_per, d_per, dft_half, periodogram};

/// Serialized as its string id, e.g. `"int.per"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    Euclidean,
    Manhattan,
    Infnorm,
    Ccor,
    Sts,
    Dtw,
    Fourier,
    Acf,
    Pacf,
    Cdm,
    Ncd,
    Cid,
    Cor,
    Cort,
    Per,
    IntPer,
    Pdc,
}

impl MeasureId {
    pub const ALL: [MeasureId; 17] = [
        MeasureId::Euclidean,
        MeasureId::Manhattan,
        MeasureId::Infnorm,
        MeasureId::Ccor,
        MeasureId::Sts,
        MeasureId::Dtw,
        MeasureId::Fourier,
        MeasureId::Acf,
        MeasureId::Pacf,
        MeasureId::Cdm,
        MeasureId::Ncd,
        MeasureId::Cid,
        MeasureId::Cor,
        MeasureId::Cort,
        MeasureId::Per,
        MeasureId::IntPer,
        MeasureId::Pdc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureId::Euclidean => "euclidean",
            MeasureId::Manhattan => "manhattan",
            MeasureId::Infnorm => "infnorm",
            MeasureId::Ccor => "ccor",
            MeasureId::Sts => "sts",
            MeasureId::Dtw => "dtw",
            MeasureId::Fourier => "fourier",
            MeasureId::Acf => "acf",
            MeasureId::Pacf => "pacf",
            MeasureId::Cdm => "cdm",
            MeasureId::Ncd => "ncd",
            MeasureId::Cid => "cid",
            MeasureId::Cor => "cor",
            MeasureId::Cort => "cort",
            MeasureId::Per => "per",
            MeasureId::IntPer => "int.per",
            MeasureId::Pdc => "pdc",
        }
    }

    /// Compression-based measures: not zero on identical input and not
    /// exactly symmetric.
    pub fn is_compression_based(self) -> bool {
        matches!(self, MeasureId::Cdm | MeasureId::Ncd)
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for MeasureId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for MeasureId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', ".");
        MeasureId::ALL
            .into_iter()
            .find(|m| m.as_str() == norm)
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

/// Parameters shared by all measures; each measure reads only its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MeasureParams {
    /// Maximum lag for `ccor`; `None` means `T - 1`.
    pub ccor_max_lag: Option<usize>,
    pub cort_k: f64,
    /// Maximum lag for `acf`/`pacf`; `None` means `min(25, T - 2)`.
    pub acf_lag_max: Option<usize>,
    pub pdc_dim: usize,
    pub symbolization: Symbolization,
}

impl Default for MeasureParams {
    fn default() -> Self {
        Self {
            ccor_max_lag: None,
            cort_k: DEFAULT_CORT_K,
            acf_lag_max: None,
            pdc_dim: DEFAULT_PDC_DIM,
            symbolization: Symbolization::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub id: MeasureId,
    pub params: MeasureParams,
}

impl MeasureSpec {
    pub fn new(id: MeasureId) -> Self {
        Self { id, params: MeasureParams::default() }
    }

    pub fn with_params(id: MeasureId, params: MeasureParams) -> Self {
        Self { id, params }
    }

    /// Distance on raw slices. Lengths must match.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
        }
        if x.len() < 2 {
            return Err(Error::SeriesTooShort { len: x.len(), needed: 2 });
        }
        let p = &self.params;
        let d = match self.id {
            MeasureId::Euclidean => d_lp(x, y, Norm::L2),
            MeasureId::Manhattan => d_lp(x, y, Norm::L1),
            MeasureId::Infnorm => d_lp(x, y, Norm::LInf),
            MeasureId::Ccor => d_ccor(x, y, p.ccor_max_lag)?,
            MeasureId::Sts => d_sts(x, y),
            MeasureId::Dtw => d_dtw(x, y),
            MeasureId::Fourier => d_fourier(x, y),
            MeasureId::Acf => d_acf(x, y, p.acf_lag_max)?,
            MeasureId::Pacf => d_pacf(x, y, p.acf_lag_max)?,
            MeasureId::Cdm => d_cdm(x, y, &p.symbolization)?,
            MeasureId::Ncd => d_ncd(x, y, &p.symbolization)?,
            MeasureId::Cid => d_cid(x, y),
            MeasureId::Cor => d_cor(x, y)?,
            MeasureId::Cort => d_cort(x, y, p.cort_k)?,
            MeasureId::Per => d_per(x, y)?,
            MeasureId::IntPer => d_int_per(x, y)?,
            MeasureId::Pdc => d_pdc(x, y, p.pdc_dim)?,
        };
        if !d.is_finite() {
            return Err(Error::NonFiniteDistance { measure: self.id.as_str() });
        }
        Ok(d)
    }
}

/// `d_M(x, y)` for two equal-length series.
pub fn dissimilarity(m: &MeasureSpec, x: &TimeSeries, y: &TimeSeries) -> Result<f64> {
    m.distance(x.values(), y.values()).map_err(|e| match e {
        Error::ConstantSeries(_) => {
            let which = if is_constant(x.values()) { x.label() } else { y.label() };
            Error::ConstantSeries(which.to_string())
        }
        other => other,
    })
}

pub(crate) fn is_constant(x: &[f64]) -> bool {
    x.iter().all(|v| *v == x[0])
}
