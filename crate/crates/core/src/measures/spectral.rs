use rustfft::num_complex::Complex64;
use rustfft::FftPlannerScalar;

use super::lp::{d_lp, Norm};
use crate::{Error, Result};

const MIN_LEN: usize = 4;

fn check_len(len: usize) -> Result<()> {
    if len < MIN_LEN {
        return Err(Error::SeriesTooShort { len, needed: MIN_LEN });
    }
    Ok(())
}

/// DFT coefficients `X_k = Σ_t x_t e^{-i2πkt/T}` for `k = 0..=⌊T/2⌋`.
pub fn dft_half(x: &[f64]) -> Vec<Complex64> {
    let n = x.len();
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlannerScalar::new().plan_fft_forward(n).process(&mut buf);
    buf.truncate(n / 2 + 1);
    buf
}

/// `I(λ_k) = |X_k|² / T` for `k = 1..=⌊T/2⌋` (the DC bin is dropped).
pub fn periodogram(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    dft_half(x)[1..].iter().map(|c| c.norm_sqr() / n).collect()
}

pub fn d_per(x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(x.len())?;
    Ok(d_lp(&periodogram(x), &periodogram(y), Norm::L2))
}

fn cumulative_normalized(x: &[f64]) -> Result<Vec<f64>> {
    let p = periodogram(x);
    let total: f64 = p.iter().sum();
    if !(total > 0.0) {
        return Err(Error::ZeroPower);
    }
    let mut acc = 0.0;
    Ok(p.iter()
        .map(|v| {
            acc += v;
            acc / total
        })
        .collect())
}

pub fn d_int_per(x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(x.len())?;
    Ok(d_lp(&cumulative_normalized(x)?, &cumulative_normalized(y)?, Norm::L1))
}

/// Euclidean distance between the non-redundant halves of the two spectra.
pub fn d_fourier(x: &[f64], y: &[f64]) -> f64 {
    dft_half(x)
        .iter()
        .zip(dft_half(y))
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive_dft(x: &[f64], k: usize) -> Complex64 {
        let n = x.len() as f64;
        x.iter()
            .enumerate()
            .map(|(t, &v)| Complex64::from_polar(v, -2.0 * PI * k as f64 * t as f64 / n))
            .sum()
    }

    const X: [f64; 16] = [
        0.5, 1.2, -0.3, 2.2, 1.1, 0.0, -1.4, 0.8, 2.5, -0.6, 0.9, 1.7, -2.1, 0.4, 0.3, 1.0,
    ];

    #[test]
    fn fft_matches_naive_dft() {
        let fast = dft_half(&X);
        assert_eq!(fast.len(), 9);
        for (k, c) in fast.iter().enumerate() {
            assert!((c - naive_dft(&X, k)).norm() < 1e-10);
        }
    }

    #[test]
    fn fourier_relates_to_l2_by_parseval() {
        let y: Vec<f64> = X.iter().enumerate().map(|(i, v)| v * 0.5 + (i as f64).cos()).collect();
        let n = X.len();
        let oracle: f64 = (0..=n / 2)
            .map(|k| (naive_dft(&X, k) - naive_dft(&y, k)).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let d = d_fourier(&X, &y);
        assert!((d - oracle).abs() < 1e-9);
        // Half spectrum holds between T/2 and T times the squared L2 distance.
        let l2sq = d_lp(&X, &y, Norm::L2).powi(2);
        assert!(d * d >= n as f64 * l2sq / 2.0 - 1e-9);
        assert!(d * d <= n as f64 * l2sq + 1e-9);
    }

    #[test]
    fn spectral_identities() {
        assert_eq!(d_per(&X, &X).unwrap(), 0.0);
        assert_eq!(d_int_per(&X, &X).unwrap(), 0.0);
        assert_eq!(d_fourier(&X, &X), 0.0);
        let shifted: Vec<f64> = X.iter().map(|v| v + 10.0).collect();
        assert!(d_per(&X, &shifted).unwrap() < 1e-9);
        assert_eq!(d_int_per(&X, &[2.0; 16]), Err(Error::ZeroPower));
        assert!(matches!(d_per(&[1.0, 2.0, 3.0], &[1.0, 2.0, 1.0]), Err(Error::SeriesTooShort { .. })));
    }
}
