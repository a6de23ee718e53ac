use super::TimeSeries;
use crate::{Error, Result};

/// Quarter-to-quarter (or period-to-period) percentage changes, length `T-1`.
pub fn pct_change(x: &TimeSeries) -> Result<TimeSeries> {
    let v = x.values();
    if let Some(index) = v[..v.len() - 1].iter().position(|&d| d == 0.0) {
        return Err(Error::DivisionByZero { label: x.label().to_string(), index });
    }
    let out = v.windows(2).map(|w| 100.0 * (w[1] / w[0] - 1.0)).collect();
    x.with_values(out)
}

pub fn negate(x: &TimeSeries) -> Result<TimeSeries> {
    x.with_values(x.values().iter().map(|v| -v).collect())
}

/// `prefix[..cut]` followed by `suffix[cut..]`, labelled `label`.
pub fn concat_prefix_suffix(
    prefix: &TimeSeries,
    suffix: &TimeSeries,
    cut: usize,
    label: &str,
) -> Result<TimeSeries> {
    if cut == 0 || cut >= prefix.len() {
        return Err(Error::IndexOutOfRange { index: cut, len: prefix.len() });
    }
    if cut >= suffix.len() {
        return Err(Error::IndexOutOfRange { index: cut, len: suffix.len() });
    }
    let mut values = prefix.values()[..cut].to_vec();
    values.extend_from_slice(&suffix.values()[cut..]);
    TimeSeries::new(label, prefix.frequency(), values)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Transform<'a> {
    Negate,
    ConcatPrefixSuffix { suffix: &'a TimeSeries, cut: usize, label: &'a str },
}

pub fn transform_series(x: &TimeSeries, t: Transform<'_>) -> Result<TimeSeries> {
    match t {
        Transform::Negate => negate(x),
        Transform::ConcatPrefixSuffix { suffix, cut, label } => concat_prefix_suffix(x, suffix, cut, label),
    }
}
