//! Independent reference implementations used by the test suites. Nothing
//! here calls into the code paths it checks.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tsclust::cluster::{Dendrogram, Geometry, Linkage};
use tsclust::DistanceMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random symmetric matrix with zero diagonal and entries in (0.05, 1).
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = rng.random_range(0.05..1.0);
            v[i * n + j] = d;
            v[j * n + i] = d;
        }
    }
    let labels = (0..n).map(|i| format!("v{i:02}")).collect();
    DistanceMatrix::new(labels, v).unwrap()
}

/// Re-derives every merge from scratch. Each cluster carries its member
/// set and a weight vector over leaves (uniform for the size-weighted
/// linkages, halved at every merge for McQuitty and median). Distances:
/// min/max for single/complete, `Σ u_a v_b d_ab` for average/McQuitty, and
/// the generalised squared centroid distance
/// `Q(u,v) - Q(u,u)/2 - Q(v,v)/2` for centroid/median, scaled by
/// `2|A||B|/(|A|+|B|)` for Ward.
/// Returns `(left members, right members, height)` per merge.
pub fn cluster_oracle(d: &DistanceMatrix, linkage: Linkage, geometry: Geometry) -> Vec<(Vec<usize>, Vec<usize>, f64)> {
    let n = d.len();
    let squared = geometry == Geometry::Squared && matches!(linkage, Linkage::Ward | Linkage::Median | Linkage::Centroid);
    let base = |a: usize, b: usize| {
        if a == b {
            0.0
        } else if squared {
            d.get(a, b) * d.get(a, b)
        } else {
            d.get(a, b)
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d.labels()[a].cmp(&d.labels()[b]));
    let mut rank = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    struct C {
        members: Vec<usize>,
        w: Vec<f64>,
        key: usize,
    }
    let mut clusters: Vec<C> = (0..n)
        .map(|i| {
            let mut w = vec![0.0; n];
            w[i] = 1.0;
            C { members: vec![i], w, key: rank[i] }
        })
        .collect();
    let q = |u: &[f64], v: &[f64]| {
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += u[a] * v[b] * base(a, b);
            }
        }
        s
    };
    let dist = |a: &C, b: &C| -> f64 {
        match linkage {
            Linkage::Single => a.members.iter().flat_map(|&x| b.members.iter().map(move |&y| base(x, y))).fold(f64::INFINITY, f64::min),
            Linkage::Complete => a.members.iter().flat_map(|&x| b.members.iter().map(move |&y| base(x, y))).fold(f64::NEG_INFINITY, f64::max),
            Linkage::Average | Linkage::McQuitty => q(&a.w, &b.w),
            Linkage::Centroid | Linkage::Median => q(&a.w, &b.w) - 0.5 * q(&a.w, &a.w) - 0.5 * q(&b.w, &b.w),
            Linkage::Ward => {
                let (na, nb) = (a.members.len() as f64, b.members.len() as f64);
                2.0 * na * nb / (na + nb) * (q(&a.w, &b.w) - 0.5 * q(&a.w, &a.w) - 0.5 * q(&b.w, &b.w))
            }
        }
    };
    let mut out = Vec::new();
    while clusters.len() > 1 {
        let mut best: Option<(f64, (usize, usize), usize, usize)> = None;
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let v = dist(&clusters[i], &clusters[j]);
                let (ki, kj) = (clusters[i].key, clusters[j].key);
                let pair = (ki.min(kj), ki.max(kj));
                if best.map_or(true, |(bv, bp, _, _)| v < bv || (v == bv && pair < bp)) {
                    best = Some((v, pair, i, j));
                }
            }
        }
        let (v, _, i, j) = best.unwrap();
        let b = clusters.remove(j);
        let a = clusters.remove(i);
        let (l, r) = if a.key < b.key { (&a, &b) } else { (&b, &a) };
        let mut lm = l.members.clone();
        let mut rm = r.members.clone();
        lm.sort_unstable();
        rm.sort_unstable();
        let height = if squared { v.signum() * v.abs().sqrt() } else { v };
        out.push((lm, rm, height));
        let (na, nb) = (a.members.len() as f64, b.members.len() as f64);
        let w: Vec<f64> = match linkage {
            Linkage::McQuitty | Linkage::Median => a.w.iter().zip(&b.w).map(|(x, y)| 0.5 * x + 0.5 * y).collect(),
            _ => a.w.iter().zip(&b.w).map(|(x, y)| (na * x + nb * y) / (na + nb)).collect(),
        };
        let mut members = a.members.clone();
        members.extend(&b.members);
        clusters.push(C { members, w, key: a.key.min(b.key) });
    }
    out
}

/// Compares a dendrogram with the oracle's merge list. Returns a message on mismatch.
pub fn compare_with_oracle(t: &Dendrogram, oracle: &[(Vec<usize>, Vec<usize>, f64)], tol: f64) -> Result<(), String> {
    for (k, (m, (ol, or, oh))) in t.merges().iter().zip(oracle).enumerate() {
        let (l, r) = (t.leaves_of(m.left), t.leaves_of(m.right));
        if &l != ol || &r != or {
            return Err(format!("merge {k}: got {l:?}+{r:?}, oracle {ol:?}+{or:?}"));
        }
        if (m.height - oh).abs() > tol {
            return Err(format!("merge {k}: height {} vs oracle {oh}", m.height));
        }
    }
    if t.merges().len() != oracle.len() {
        return Err("merge count differs".into());
    }
    Ok(())
}

/// Partial autocorrelation at lag `k` as the last coefficient of the order-`k`
/// Yule–Walker fit, solved by Gaussian elimination.
pub fn pacf_yule_walker(x: &[f64], k: usize) -> f64 {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let c0: f64 = x.iter().map(|v| (v - m) * (v - m)).sum();
    let r = |lag: usize| -> f64 {
        if lag == 0 {
            return 1.0;
        }
        (0..x.len() - lag).map(|t| (x[t] - m) * (x[t + lag] - m)).sum::<f64>() / c0
    };
    let mut a: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut row: Vec<f64> = (0..k).map(|j| r(i.abs_diff(j))).collect();
            row.push(r(i + 1));
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs())).unwrap();
        a.swap(col, piv);
        for row in 0..k {
            if row != col {
                let f = a[row][col] / a[col][col];
                for c in col..=k {
                    a[row][c] -= f * a[col][c];
                }
            }
        }
    }
    a[k - 1][k] / a[k - 1][k - 1]
}

/// Warped series via the integral of the step function `f(t) = X_j` on
/// `[j-1, j)`: `W_i = (F(iα) - F((i-1)α)) / α`.
pub fn warped_by_integral(x: &[f64], alpha: f64) -> Vec<f64> {
    let prefix = |s: f64| -> f64 {
        let whole = s.floor() as usize;
        let mut acc: f64 = x[..whole.min(x.len())].iter().sum();
        if whole < x.len() {
            acc += (s - whole as f64) * x[whole];
        }
        acc
    };
    let n = (x.len() as f64 / alpha).floor() as usize;
    (1..=n).map(|i| (prefix(i as f64 * alpha) - prefix((i - 1) as f64 * alpha)) / alpha).collect()
}

pub fn euclid(x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() {
        s += (x[i] - y[i]).powi(2);
    }
    s.sqrt()
}

pub fn sts(x: &[f64], y: &[f64]) -> f64 {
    let dx: Vec<f64> = (1..x.len()).map(|i| x[i] - x[i - 1]).collect();
    let dy: Vec<f64> = (1..y.len()).map(|i| y[i] - y[i - 1]).collect();
    euclid(&dx, &dy)
}

/// Full-matrix DTW.
pub fn dtw(x: &[f64], y: &[f64]) -> f64 {
    let (n, m) = (x.len(), y.len());
    let mut g = vec![vec![f64::INFINITY; m + 1]; n + 1];
    g[0][0] = 0.0;
    for i in 1..=n {
        for j in 1..=m {
            g[i][j] = (x[i - 1] - y[j - 1]).abs() + g[i - 1][j - 1].min(g[i - 1][j]).min(g[i][j - 1]);
        }
    }
    g[n][m]
}

/// Straight-line ratio: base prefix, delayed window, integral-warped series.
pub fn ratio_oracle(x: &[f64], alpha: f64, delay: usize, dist: fn(&[f64], &[f64]) -> f64) -> f64 {
    let n = (x.len() as f64 / alpha).floor() as usize;
    let b = &x[..n];
    let d = &x[delay..delay + n];
    let w = warped_by_integral(x, alpha);
    dist(b, d) / dist(b, &w)
}

/// Random series of mixed type: Gaussian noise, random walk or noisy sine.
pub fn random_series(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let kind = rng.random_range(0..3);
    let mut acc = 0.0;
    let freq = rng.random_range(0.05..0.5);
    (0..len)
        .map(|t| {
            let e: f64 = rng.random_range(-1.0..1.0);
            match kind {
                0 => 3.0 * e,
                1 => {
                    acc += e;
                    acc
                }
                _ => (t as f64 * freq).sin() + 0.2 * e,
            }
        })
        .collect()
}

/// Merge index (0-based) at which two leaves first co-occur, by scanning
/// the member sets of every merge.
pub fn first_comerge(t: &Dendrogram, a: usize, b: usize) -> usize {
    let n = t.n_leaves();
    for (k, m) in t.merges().iter().enumerate() {
        let members = t.leaves_of(n + k);
        let _ = m;
        if members.contains(&a) && members.contains(&b) {
            return k;
        }
    }
    unreachable!()
}
