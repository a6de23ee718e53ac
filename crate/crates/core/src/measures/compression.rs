use std::io::Write;

use flate2::write::DeflateEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::series::{mean, std_dev};
use crate::{Error, Result};

pub const DEFAULT_SIGNIFICANT_DIGITS: usize = 6;
pub const DEFAULT_SAX_ALPHABET: usize = 10;

/// How a series is rendered to bytes before compression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Symbolization {
    /// Comma-separated decimals with a fixed number of significant digits.
    Text { significant_digits: usize },
    /// z-normalised values mapped onto an equiprobable Gaussian alphabet.
    Sax { alphabet: usize },
}

impl Default for Symbolization {
    fn default() -> Self {
        Symbolization::Text { significant_digits: DEFAULT_SIGNIFICANT_DIGITS }
    }
}

/// `%g`-style rendering with `digits` significant digits.
fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn sax_breakpoints(alphabet: usize) -> Vec<f64> {
    let normal = Normal::standard();
    (1..alphabet).map(|i| normal.inverse_cdf(i as f64 / alphabet as f64)).collect()
}

/// Byte rendering of one series under `sym`.
pub fn serialize(x: &[f64], sym: &Symbolization) -> Result<Vec<u8>> {
    match *sym {
        Symbolization::Text { significant_digits } => {
            if !(1..=17).contains(&significant_digits) {
                return Err(Error::InvalidParameter(format!(
                    "significant digits {significant_digits} outside 1..=17"
                )));
            }
            let parts: Vec<String> = x.iter().map(|&v| format_significant(v, significant_digits)).collect();
            Ok(parts.join(",").into_bytes())
        }
        Symbolization::Sax { alphabet } => {
            if !(2..=26).contains(&alphabet) {
                return Err(Error::InvalidParameter(format!("SAX alphabet {alphabet} outside 2..=26")));
            }
            let cuts = sax_breakpoints(alphabet);
            let (m, sd) = (mean(x), std_dev(x));
            Ok(x.iter()
                .map(|&v| {
                    let z = if sd > 0.0 { (v - m) / sd } else { 0.0 };
                    b'a' + cuts.iter().filter(|&&c| z >= c).count() as u8
                })
                .collect())
        }
    }
}

/// Size in bytes of the raw DEFLATE stream (maximum level, no container).
pub fn compressed_size(bytes: &[u8]) -> Result<usize> {
    let mut enc = DeflateEncoder::new(Vec::with_capacity(bytes.len() / 2 + 16), Compression::best());
    enc.write_all(bytes).map_err(|e| Error::CompressionError(e.to_string()))?;
    let out = enc.finish().map_err(|e| Error::CompressionError(e.to_string()))?;
    Ok(out.len())
}

struct Sizes {
    x: f64,
    y: f64,
    xy: f64,
}

fn sizes(x: &[f64], y: &[f64], sym: &Symbolization) -> Result<Sizes> {
    let sx = serialize(x, sym)?;
    let sy = serialize(y, sym)?;
    let mut joined = Vec::with_capacity(sx.len() + sy.len() + 1);
    joined.extend_from_slice(&sx);
    if matches!(sym, Symbolization::Text { .. }) {
        joined.push(b',');
    }
    joined.extend_from_slice(&sy);
    Ok(Sizes {
        x: compressed_size(&sx)? as f64,
        y: compressed_size(&sy)? as f64,
        xy: compressed_size(&joined)? as f64,
    })
}

/// Compression-based dissimilarity `C(xy) / (C(x) + C(y))`. Order-sensitive.
pub fn d_cdm(x: &[f64], y: &[f64], sym: &Symbolization) -> Result<f64> {
    let s = sizes(x, y, sym)?;
    Ok(s.xy / (s.x + s.y))
}

/// Normalised compression distance, clamped at 0.
pub fn d_ncd(x: &[f64], y: &[f64], sym: &Symbolization) -> Result<f64> {
    let s = sizes(x, y, sym)?;
    Ok(((s.xy - s.x.min(s.y)) / s.x.max(s.y)).max(0.0))
}
