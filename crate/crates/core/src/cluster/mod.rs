//! Agglomerative hierarchical clustering by the Lance–Williams recurrence.
//!
//! Leaves are numbered `0..n` in matrix order and the `k`-th merge creates
//! cluster `n + k`. At every step the pair with the smallest current
//! inter-cluster distance merges; exact ties go to the lexicographically
//! smallest pair of cluster keys, a cluster's key being the smallest leaf
//! label it contains.
//!
//! Ward, median and centroid linkage run on squared input dissimilarities
//! by default and report square-rooted heights (negative squared values keep
//! their sign). [`Geometry::Raw`] applies the recurrence to the input as-is.

mod ascii;
mod newick;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{DistanceMatrix, Error, Result};

pub use ascii::to_ascii;
pub use newick::{parse_newick, to_newick};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    Ward,
    Average,
    McQuitty,
    Median,
    Centroid,
}

impl Linkage {
    pub const ALL: [Linkage; 7] = [
        Linkage::Single,
        Linkage::Complete,
        Linkage::Ward,
        Linkage::Average,
        Linkage::McQuitty,
        Linkage::Median,
        Linkage::Centroid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Linkage::Single => "single",
            Linkage::Complete => "complete",
            Linkage::Ward => "ward",
            Linkage::Average => "average",
            Linkage::McQuitty => "mcquitty",
            Linkage::Median => "median",
            Linkage::Centroid => "centroid",
        }
    }

    /// Linkages that operate on squared dissimilarities under [`Geometry::Squared`].
    pub fn is_geometric(self) -> bool {
        matches!(self, Linkage::Ward | Linkage::Median | Linkage::Centroid)
    }

    /// Linkages whose merge heights never decrease.
    pub fn is_monotone(self) -> bool {
        !matches!(self, Linkage::Median | Linkage::Centroid)
    }
}

impl FromStr for Linkage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let alias = match s.as_str() {
            "upgma" => "average",
            "wpgma" => "mcquitty",
            "wpgmc" => "median",
            "upgmc" => "centroid",
            "ward.d2" => "ward",
            other => other,
        };
        Linkage::ALL
            .into_iter()
            .find(|l| l.as_str() == alias)
            .ok_or(Error::UnknownLinkage(s))
    }
}

/// Input convention for the geometric linkages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    /// Square the input, run the recurrence, report `sqrt` heights.
    #[default]
    Squared,
    /// Run the recurrence on the input dissimilarities directly.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

/// The `n - 1` merges turning `n` singletons into one cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    labels: Vec<String>,
    merges: Vec<Merge>,
}

impl Dendrogram {
    /// Checks that every id is a child exactly once and sizes add up.
    pub fn new(labels: Vec<String>, merges: Vec<Merge>) -> Result<Self> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::TooFewSeries(n));
        }
        if merges.len() != n - 1 {
            return Err(Error::InvalidMatrix(format!("{} merges for {n} leaves", merges.len())));
        }
        let mut used = vec![false; 2 * n - 1];
        let mut sizes = vec![1usize; 2 * n - 1];
        for (k, m) in merges.iter().enumerate() {
            let id = n + k;
            for c in [m.left, m.right] {
                if c >= id || used[c] {
                    return Err(Error::InvalidMatrix(format!("merge {k} reuses or forward-references {c}")));
                }
                used[c] = true;
            }
            sizes[id] = sizes[m.left] + sizes[m.right];
            if sizes[id] != m.size {
                return Err(Error::InvalidMatrix(format!("merge {k} has size {}, expected {}", m.size, sizes[id])));
            }
        }
        Ok(Self { labels, merges })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn n_leaves(&self) -> usize {
        self.labels.len()
    }

    /// Height of node `id`; leaves sit at 0.
    pub fn height(&self, id: usize) -> f64 {
        if id < self.n_leaves() {
            0.0
        } else {
            self.merges[id - self.n_leaves()].height
        }
    }

    /// Indices of merges whose height is below that of the preceding merge.
    pub fn inversions(&self) -> Vec<usize> {
        self.merges
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1].height < w[0].height)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Leaf indices under node `id`, ascending.
    pub fn leaves_of(&self, id: usize) -> Vec<usize> {
        let n = self.n_leaves();
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            if v < n {
                out.push(v);
            } else {
                let m = &self.merges[v - n];
                stack.push(m.left);
                stack.push(m.right);
            }
        }
        out.sort_unstable();
        out
    }

    /// Partition into `k` groups by undoing the last `k - 1` merges. Groups
    /// list leaf labels in input order and are ordered by their first leaf.
    pub fn cut(&self, k: usize) -> Result<Vec<Vec<String>>> {
        let n = self.n_leaves();
        if k < 1 || k > n {
            return Err(Error::InvalidK { k, n });
        }
        let mut uf = UnionFind::new(n);
        for m in &self.merges[..n - k] {
            let (a, b) = (self.leaves_of(m.left)[0], self.leaves_of(m.right)[0]);
            uf.union(a, b);
        }
        let mut groups: Vec<Vec<String>> = Vec::new();
        let mut root_group: Vec<Option<usize>> = vec![None; n];
        for leaf in 0..n {
            let r = uf.find(leaf);
            let g = *root_group[r].get_or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(self.labels[leaf].clone());
        }
        Ok(groups)
    }

    /// Group index per leaf for a `k`-cut, aligned with [`Self::labels`].
    pub fn cut_assignments(&self, k: usize) -> Result<Vec<usize>> {
        let groups = self.cut(k)?;
        let mut out = vec![0; self.n_leaves()];
        for (g, members) in groups.iter().enumerate() {
            for m in members {
                let i = self.labels.iter().position(|l| l == m).expect("label from this tree");
                out[i] = g;
            }
        }
        Ok(out)
    }

    /// Number of clusters present right after the first merge that puts `a`
    /// and `b` in the same cluster: `n - 1` for the first merge, 1 for the root.
    pub fn merge_stage(&self, a: &str, b: &str) -> Result<usize> {
        let ia = self.leaf_index(a)?;
        let ib = self.leaf_index(b)?;
        if ia == ib {
            return Err(Error::InvalidParameter(format!("pair ({a}, {b}) must name distinct leaves")));
        }
        let n = self.n_leaves();
        let mut uf = UnionFind::new(2 * n - 1);
        for (k, m) in self.merges.iter().enumerate() {
            uf.union(m.left, n + k);
            uf.union(m.right, n + k);
            if uf.find(ia) == uf.find(ib) {
                return Ok(n - (k + 1));
            }
        }
        unreachable!("the root contains every leaf")
    }

    fn leaf_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::LabelNotFound(label.to_string()))
    }

    /// `label,group` rows for a `k`-cut.
    pub fn partition_csv(&self, k: usize) -> Result<String> {
        let assign = self.cut_assignments(k)?;
        let mut out = String::from("label,group\n");
        for (l, g) in self.labels.iter().zip(assign) {
            out.push_str(&format!("{},{}\n", crate::matrix::csv_field(l), g + 1));
        }
        Ok(out)
    }
}

/// Rule of thumb for a pair of related variables: they should share a
/// cluster while three or more clusters remain.
pub fn rule_of_thumb(stage: usize) -> bool {
    stage >= 3
}

pub fn merge_stage(dend: &Dendrogram, a: &str, b: &str) -> Result<usize> {
    dend.merge_stage(a, b)
}

pub fn cut(dend: &Dendrogram, k: usize) -> Result<Vec<Vec<String>>> {
    dend.cut(k)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Ranks of the labels in lexicographic order; the tie-break key of a leaf.
pub(crate) fn label_ranks(labels: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut rank = vec![0; labels.len()];
    for (r, i) in order.into_iter().enumerate() {
        rank[i] = r;
    }
    rank
}

/// Agglomerates with the default [`Geometry::Squared`] convention.
pub fn agglomerate(d: &DistanceMatrix, linkage: Linkage) -> Result<Dendrogram> {
    agglomerate_with(d, linkage, Geometry::default())
}

pub fn agglomerate_with(d: &DistanceMatrix, linkage: Linkage, geometry: Geometry) -> Result<Dendrogram> {
    let n = d.len();
    if n < 2 {
        return Err(Error::TooFewSeries(n));
    }
    let squared = linkage.is_geometric() && geometry == Geometry::Squared;
    // Working distances between active slots; slot i holds cluster `ids[i]`.
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let v = d.get(i, j);
            dist[i * n + j] = if squared { v * v } else { v };
        }
    }
    let mut key = label_ranks(d.labels());
    let mut ids: Vec<usize> = (0..n).collect();
    let mut size = vec![1usize; n];
    let mut active = vec![true; n];
    let mut merges = Vec::with_capacity(n - 1);

    for step in 0..n - 1 {
        let mut best: Option<(f64, (usize, usize), usize, usize)> = None;
        for i in 0..n {
            if !active[i] {
                continue;
            }
            for j in i + 1..n {
                if !active[j] {
                    continue;
                }
                let v = dist[i * n + j];
                let pair = (key[i].min(key[j]), key[i].max(key[j]));
                let better = match best {
                    None => true,
                    Some((bv, bp, _, _)) => v < bv || (v == bv && pair < bp),
                };
                if better {
                    best = Some((v, pair, i, j));
                }
            }
        }
        let (value, _, i, j) = best.expect("at least two active clusters");
        let (ni, nj) = (size[i] as f64, size[j] as f64);
        for k in 0..n {
            if !active[k] || k == i || k == j {
                continue;
            }
            let nk = size[k] as f64;
            let (dik, djk, dij) = (dist[i * n + k], dist[j * n + k], value);
            let updated = match linkage {
                Linkage::Single => dik.min(djk),
                Linkage::Complete => dik.max(djk),
                Linkage::Average => (ni * dik + nj * djk) / (ni + nj),
                Linkage::McQuitty => 0.5 * dik + 0.5 * djk,
                Linkage::Median => 0.5 * dik + 0.5 * djk - 0.25 * dij,
                Linkage::Centroid => {
                    let s = ni + nj;
                    (ni * dik + nj * djk) / s - ni * nj * dij / (s * s)
                }
                Linkage::Ward => ((ni + nk) * dik + (nj + nk) * djk - nk * dij) / (ni + nj + nk),
            };
            dist[i * n + k] = updated;
            dist[k * n + i] = updated;
        }
        let (left, right) = if key[i] < key[j] { (ids[i], ids[j]) } else { (ids[j], ids[i]) };
        let height = if squared { value.signum() * value.abs().sqrt() } else { value };
        merges.push(Merge { left, right, height, size: size[i] + size[j] });
        // The merged cluster takes slot i.
        active[j] = false;
        size[i] += size[j];
        key[i] = key[i].min(key[j]);
        ids[i] = n + step;
    }
    Dendrogram::new(d.labels().to_vec(), merges)
}
