#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

/// Minkowski distance for p ∈ {1, 2, ∞}. Slices must have equal length.
pub fn d_lp(x: &[f64], y: &[f64], p: Norm) -> f64 {
    let diffs = x.iter().zip(y).map(|(a, b)| (a - b).abs());
    match p {
        Norm::L1 => diffs.sum(),
        Norm::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
        Norm::LInf => diffs.fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        assert_eq!(d_lp(&[0.0, 0.0, 0.0], &[3.0, 4.0, 0.0], Norm::L2), 5.0);
        assert_eq!(d_lp(&[1.0, 5.0], &[2.0, 2.0], Norm::LInf), 3.0);
        assert_eq!(d_lp(&[1.0, -5.0], &[1.0, -5.0], Norm::L1), 0.0);
        assert_eq!(d_lp(&[0.0, 0.0], &[1.0, -2.0], Norm::L1), 3.0);
    }
}
