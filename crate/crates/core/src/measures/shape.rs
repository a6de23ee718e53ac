use super::lp::{d_lp, Norm};

/// Guard for the complexity ratio of flat series.
pub const CID_EPSILON: f64 = 1e-12;

/// Euclidean distance between the slope sequences (unit sampling interval).
pub fn d_sts(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(a, b)| {
            let d = (a[1] - a[0]) - (b[1] - b[0]);
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// `sqrt(Σ (s_{t+1} - s_t)²)`.
pub fn complexity_estimate(s: &[f64]) -> f64 {
    s.windows(2).map(|w| (w[1] - w[0]) * (w[1] - w[0])).sum::<f64>().sqrt()
}

/// Complexity-invariant distance. When both series are flat the correction
/// factor is 1.
pub fn d_cid(x: &[f64], y: &[f64]) -> f64 {
    let (cx, cy) = (complexity_estimate(x), complexity_estimate(y));
    let hi = cx.max(cy);
    let factor = if hi < CID_EPSILON { 1.0 } else { hi / cx.min(cy).max(CID_EPSILON) };
    d_lp(x, y, Norm::L2) * factor
}
