use std::collections::BTreeMap;

use crate::{Error, Result};

pub const DEFAULT_PDC_DIM: usize = 4;
const MAX_DIM: usize = 10;

/// Relative frequencies of ordinal patterns of order `m` over all windows,
/// keyed by the Lehmer code of the stable argsort (ties broken by index).
pub fn ordinal_distribution(x: &[f64], m: usize) -> Result<BTreeMap<u64, f64>> {
    if !(2..=MAX_DIM).contains(&m) {
        return Err(Error::InvalidParameter(format!("pdc embedding dimension {m} outside 2..={MAX_DIM}")));
    }
    if x.len() < m + 1 {
        return Err(Error::SeriesTooShort { len: x.len(), needed: m + 1 });
    }
    let windows = x.len() - m + 1;
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    let mut idx: Vec<usize> = Vec::with_capacity(m);
    for w in x.windows(m) {
        idx.clear();
        idx.extend(0..m);
        idx.sort_by(|&a, &b| w[a].total_cmp(&w[b]).then(a.cmp(&b)));
        *counts.entry(lehmer(&idx)).or_default() += 1;
    }
    Ok(counts.into_iter().map(|(k, c)| (k, c as f64 / windows as f64)).collect())
}

fn lehmer(perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for (i, &p) in perm.iter().enumerate() {
        let smaller_after = perm[i + 1..].iter().filter(|&&q| q < p).count() as u64;
        code = code * (perm.len() - i) as u64 + smaller_after;
    }
    code
}

/// Squared Hellinger divergence `Σ (√p - √q)²` between pattern distributions.
pub fn d_pdc(x: &[f64], y: &[f64], m: usize) -> Result<f64> {
    let p = ordinal_distribution(x, m)?;
    let q = ordinal_distribution(y, m)?;
    let mut keys: Vec<u64> = p.keys().chain(q.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    Ok(keys
        .into_iter()
        .map(|k| {
            let d = p.get(&k).copied().unwrap_or(0.0).sqrt() - q.get(&k).copied().unwrap_or(0.0).sqrt();
            d * d
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_support_gives_two() {
        let up = [1.0, 2.0, 3.0, 4.0, 5.0];
        let down = [5.0, 4.0, 3.0, 2.0, 1.0];
        assert!((d_pdc(&up, &down, 2).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(d_pdc(&up, &up, 2).unwrap(), 0.0);
    }

    #[test]
    fn affine_invariance_and_ties() {
        let x = [0.3, 1.9, -0.4, 2.2, 2.2, 0.7, 1.1, -1.0];
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 7.0).collect();
        assert_eq!(d_pdc(&x, &y, 3).unwrap(), 0.0);
        // the tie 2.2, 2.2 counts as ascending
        let dist = ordinal_distribution(&[1.0, 1.0, 1.0], 2).unwrap();
        assert_eq!(dist.len(), 1);
        assert_eq!(dist.get(&lehmer(&[0, 1])), Some(&1.0));
    }

    #[test]
    fn lehmer_codes_are_a_bijection() {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut codes: Vec<u64> = perms.iter().map(|p| lehmer(p)).collect();
        codes.sort_unstable();
        assert_eq!(codes, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn errors() {
        assert!(matches!(d_pdc(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 3.0, 4.0], 4), Err(Error::SeriesTooShort { .. })));
        assert!(d_pdc(&[1.0; 20], &[1.0; 20], 1).is_err());
    }
}
