use super::is_constant;
use super::lp::{d_lp, Norm};
use crate::series::mean;
use crate::{Error, Result};

/// `min(25, T - 2)`.
pub fn default_lag_max(len: usize) -> usize {
    25.min(len.saturating_sub(2))
}

fn resolve_lag(len: usize, lag_max: Option<usize>) -> Result<usize> {
    let lag = lag_max.unwrap_or_else(|| default_lag_max(len));
    if lag == 0 {
        return Err(Error::SeriesTooShort { len, needed: 3 });
    }
    if len < lag + 2 {
        return Err(Error::SeriesTooShort { len, needed: lag + 2 });
    }
    Ok(lag)
}

/// Sample autocorrelations at lags `1..=lag_max`.
pub fn acf(x: &[f64], lag_max: usize) -> Result<Vec<f64>> {
    if is_constant(x) {
        return Err(Error::ConstantSeries(String::new()));
    }
    let m = mean(x);
    let c: Vec<f64> = x.iter().map(|v| v - m).collect();
    let c0: f64 = c.iter().map(|v| v * v).sum();
    Ok((1..=lag_max)
        .map(|k| c[..c.len() - k].iter().zip(&c[k..]).map(|(a, b)| a * b).sum::<f64>() / c0)
        .collect())
}

/// Partial autocorrelations at lags `1..=lag_max` by the Durbin–Levinson
/// recursion on the sample autocorrelations.
pub fn pacf(x: &[f64], lag_max: usize) -> Result<Vec<f64>> {
    let r = acf(x, lag_max)?;
    let mut out = Vec::with_capacity(lag_max);
    let mut phi: Vec<f64> = Vec::with_capacity(lag_max);
    for k in 1..=lag_max {
        let num = r[k - 1] - (1..k).map(|j| phi[j - 1] * r[k - j - 1]).sum::<f64>();
        let den = 1.0 - (1..k).map(|j| phi[j - 1] * r[j - 1]).sum::<f64>();
        let kk = num / den;
        if !kk.is_finite() {
            return Err(Error::NonFiniteDistance { measure: "pacf" });
        }
        let next: Vec<f64> = (1..k).map(|j| phi[j - 1] - kk * phi[k - j - 1]).collect();
        phi = next;
        phi.push(kk);
        out.push(kk);
    }
    Ok(out)
}

pub fn d_acf(x: &[f64], y: &[f64], lag_max: Option<usize>) -> Result<f64> {
    let lag = resolve_lag(x.len(), lag_max)?;
    Ok(d_lp(&acf(x, lag)?, &acf(y, lag)?, Norm::L2))
}

pub fn d_pacf(x: &[f64], y: &[f64], lag_max: Option<usize>) -> Result<f64> {
    let lag = resolve_lag(x.len(), lag_max)?;
    Ok(d_lp(&pacf(x, lag)?, &pacf(y, lag)?, Norm::L2))
}
