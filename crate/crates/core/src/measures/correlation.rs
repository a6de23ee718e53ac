use super::is_constant;
use super::lp::{d_lp, Norm};
use crate::series::mean;
use crate::{Error, Result};

pub const DEFAULT_CORT_K: f64 = 2.0;

fn constant_err() -> Error {
    Error::ConstantSeries(String::new())
}

/// Pearson correlation of two non-constant slices.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if is_constant(x) || is_constant(y) {
        return Err(constant_err());
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// `sqrt(2(1 - ρ))`.
pub fn d_cor(x: &[f64], y: &[f64]) -> Result<f64> {
    let rho = pearson(x, y)?;
    Ok((2.0 * (1.0 - rho)).max(0.0).sqrt())
}

/// Sample cross-correlation `Σ_t (x_t - x̄)(y_{t+lag} - ȳ) / (T σ_x σ_y)`
/// for `lag ≥ 0`.
pub fn cross_correlation(x: &[f64], y: &[f64], lag: usize) -> Result<f64> {
    if is_constant(x) || is_constant(y) {
        return Err(constant_err());
    }
    Ok(cross_corr_unchecked(x, y, lag, norm(x, y)))
}

/// `sqrt(Σ(x-x̄)² · Σ(y-ȳ)²)`, equal to `T σ_x σ_y`; exact for `x == y`.
fn norm(x: &[f64], y: &[f64]) -> f64 {
    let ss = |v: &[f64]| {
        let m = mean(v);
        v.iter().map(|a| (a - m) * (a - m)).sum::<f64>()
    };
    (ss(x) * ss(y)).sqrt()
}

fn cross_corr_unchecked(x: &[f64], y: &[f64], lag: usize, norm: f64) -> f64 {
    let n = x.len();
    if lag >= n {
        return 0.0;
    }
    let (mx, my) = (mean(x), mean(y));
    let s: f64 = (0..n - lag).map(|t| (x[t] - mx) * (y[t + lag] - my)).sum();
    s / norm
}

/// Cross-correlation distance over lags `-K..=K`. `K` defaults to `T - 1`.
pub fn d_ccor(x: &[f64], y: &[f64], max_lag: Option<usize>) -> Result<f64> {
    if is_constant(x) || is_constant(y) {
        return Err(constant_err());
    }
    let n = x.len();
    let k = max_lag.unwrap_or(n - 1);
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("ccor lag {k} outside 1..{n}")));
    }
    let sd = norm(x, y);
    let cc0 = cross_corr_unchecked(x, y, 0, sd);
    let denom: f64 = (1..=k)
        .map(|lag| (1.0 - cross_corr_unchecked(x, y, lag, sd)) + (1.0 - cross_corr_unchecked(y, x, lag, sd)))
        .sum();
    if !(denom > 0.0) {
        return Err(Error::NonFiniteDistance { measure: "ccor" });
    }
    Ok(((1.0 - cc0).max(0.0) / denom).sqrt())
}

/// Temporal correlation of first differences.
pub fn temporal_correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.windows(2).zip(y.windows(2)) {
        let (da, db) = (a[1] - a[0], b[1] - b[0]);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(constant_err());
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// `2 / (1 + exp(k·CORT)) · L2(x, y)`.
pub fn d_cort(x: &[f64], y: &[f64], k: f64) -> Result<f64> {
    let cort = temporal_correlation(x, y)?;
    Ok(2.0 / (1.0 + (k * cort).exp()) * d_lp(x, y, Norm::L2))
}
