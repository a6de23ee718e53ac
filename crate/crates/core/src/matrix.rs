//! Labelled pairwise dissimilarity matrices.

use serde::{Deserialize, Serialize};

use crate::measures::{dissimilarity, MeasureSpec};
use crate::{Error, Result, TimeSeries};

const SYMMETRY_TOL: f64 = 1e-9;

/// Symmetric, finite, non-negative `n × n` matrix with one label per row.
/// The diagonal is kept but never read by the clustering code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Validates a row-major matrix.
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if values.len() != n * n {
            return Err(Error::InvalidMatrix(format!("{} entries for {n} labels", values.len())));
        }
        check_labels(&labels)?;
        for i in 0..n {
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) = {v}")));
                }
                if (v - values[j * n + i]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidMatrix(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { labels, values })
    }

    /// Builds a matrix from a possibly asymmetric table by averaging
    /// `d(i,j)` and `d(j,i)`.
    pub fn symmetrized(labels: Vec<String>, mut values: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if values.len() != n * n {
            return Err(Error::InvalidMatrix(format!("{} entries for {n} labels", values.len())));
        }
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (values[i * n + j] + values[j * n + i]);
                values[i * n + j] = avg;
                values[j * n + i] = avg;
            }
        }
        Self::new(labels, values)
    }

    /// Pairwise matrix of `measure` over `series`. Compression-based
    /// measures are evaluated in both orders and averaged.
    pub fn from_series(measure: &MeasureSpec, series: &[TimeSeries]) -> Result<Self> {
        let n = series.len();
        let labels: Vec<String> = series.iter().map(|s| s.label().to_string()).collect();
        check_labels(&labels)?;
        let mut values = vec![0.0; n * n];
        let asym = measure.id.is_compression_based();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    if asym {
                        values[i * n + i] = dissimilarity(measure, &series[i], &series[i])?;
                    }
                } else if asym || j > i {
                    let d = dissimilarity(measure, &series[i], &series[j])?;
                    values[i * n + j] = d;
                    if !asym {
                        values[j * n + i] = d;
                    }
                }
            }
        }
        Self::symmetrized(labels, values)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.labels.len() + j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// CSV with a header row and a leading label column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for l in &self.labels {
            out.push(',');
            out.push_str(&csv_field(l));
        }
        out.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&csv_field(l));
            for j in 0..self.len() {
                out.push(',');
                out.push_str(&format!("{}", self.get(i, j)));
            }
            out.push('\n');
        }
        out
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Frequency, MeasureId};

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("s{i}")).collect()
    }

    #[test]
    fn validation() {
        assert!(DistanceMatrix::new(labels(2), vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(DistanceMatrix::new(labels(2), vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(labels(2), vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(labels(2), vec![0.0, 1.0, 1.0]).is_err());
        assert!(matches!(
            DistanceMatrix::new(vec!["a".into(), "a".into()], vec![0.0; 4]),
            Err(Error::DuplicateLabel(_))
        ));
        let m = DistanceMatrix::symmetrized(labels(2), vec![0.6, 0.8, 0.7, 0.6]).unwrap();
        assert!((m.get(0, 1) - 0.75).abs() < 1e-15);
        assert_eq!(m.get(0, 0), 0.6);
    }

    #[test]
    fn from_series_is_symmetric() {
        let series: Vec<TimeSeries> = (0..4)
            .map(|i| {
                let v = (0..80).map(|t| ((t * (i + 1)) as f64 * 0.17).sin()).collect();
                TimeSeries::new(format!("s{i}"), Frequency::Monthly, v).unwrap()
            })
            .collect();
        for id in [MeasureId::Euclidean, MeasureId::Cdm] {
            let m = DistanceMatrix::from_series(&MeasureSpec::new(id), &series).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(m.get(i, j), m.get(j, i));
                }
            }
            let csv = m.to_csv();
            assert_eq!(csv.lines().count(), 5);
            assert!(csv.starts_with("label,s0,s1,s2,s3\n"));
        }
    }
}
