//! CSV ingestion.
//!
//! *Wide* files have a period column followed by one column per series.
//! *Long* files have one `(label, period, value)` observation per row; the
//! column names are configurable so that Eurostat bulk exports
//! (`geo`, `TIME_PERIOD`, `OBS_VALUE`) load directly.
//!
//! Periods are `YYYYQn` (quarterly), `YYYY-MM` (monthly) or plain integers
//! (abstract). Missing observations are rejected, never imputed.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tsclust::series::pct_change;
use tsclust::series::synth::ValueMode;
use tsclust::{Frequency, TimeSeries};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    #[default]
    Wide,
    Long,
}

impl FromStr for Layout {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wide" => Ok(Layout::Wide),
            "long" => Ok(Layout::Long),
            _ => Err(CliError::Config(format!("unknown layout `{s}`"))),
        }
    }
}

/// A calendar period with an ordinal that increases by one per step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Period {
    pub frequency: Frequency,
    pub ordinal: i64,
}

impl Period {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || CliError::BadPeriod(s.to_string());
        if let Some((y, q)) = s.split_once(['Q', 'q']) {
            let year: i64 = y.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if !(1..=4).contains(&q) || y.len() != 4 {
                return Err(bad());
            }
            return Ok(Period { frequency: Frequency::Quarterly, ordinal: year * 4 + q - 1 });
        }
        if let Some((y, m)) = s.split_once('-') {
            let year: i64 = y.parse().map_err(|_| bad())?;
            let m: i64 = m.parse().map_err(|_| bad())?;
            if !(1..=12).contains(&m) || y.len() != 4 || m.to_string().len() > 2 {
                return Err(bad());
            }
            return Ok(Period { frequency: Frequency::Monthly, ordinal: year * 12 + m - 1 });
        }
        let n: i64 = s.parse().map_err(|_| bad())?;
        Ok(Period { frequency: Frequency::Abstract, ordinal: n })
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.frequency {
            Frequency::Quarterly => write!(f, "{}Q{}", self.ordinal.div_euclid(4), self.ordinal.rem_euclid(4) + 1),
            Frequency::Monthly => write!(f, "{}-{:02}", self.ordinal.div_euclid(12), self.ordinal.rem_euclid(12) + 1),
            Frequency::Abstract => write!(f, "{}", self.ordinal),
        }
    }
}

/// Inclusive period bounds; either end may be open.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DateFilter {
    pub from: Option<String>,
    pub to: Option<String>,
}

impl DateFilter {
    fn bounds(&self) -> Result<(Option<Period>, Option<Period>)> {
        Ok((
            self.from.as_deref().map(Period::parse).transpose()?,
            self.to.as_deref().map(Period::parse).transpose()?,
        ))
    }
}

fn admits(bounds: &(Option<Period>, Option<Period>), p: Period) -> Result<bool> {
    for b in [bounds.0, bounds.1].into_iter().flatten() {
        if b.frequency != p.frequency {
            return Err(CliError::MixedFrequency);
        }
    }
    Ok(bounds.0.is_none_or(|lo| p >= lo) && bounds.1.is_none_or(|hi| p <= hi))
}

/// Column names for the long layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LongColumns {
    pub label: String,
    pub period: String,
    pub value: String,
}

impl Default for LongColumns {
    fn default() -> Self {
        Self { label: "label".into(), period: "period".into(), value: "value".into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub series: Vec<TimeSeries>,
    pub value_mode: ValueMode,
    pub source: String,
    pub first: Option<Period>,
    pub last: Option<Period>,
}

impl Corpus {
    pub fn labels(&self) -> Vec<&str> {
        self.series.iter().map(|s| s.label()).collect()
    }

    /// Converts every series to percentage changes (one observation shorter).
    pub fn into_pct_change(self) -> Result<Self> {
        let series = self.series.iter().map(pct_change).collect::<Result<Vec<_>, _>>()?;
        Ok(Corpus { series, value_mode: ValueMode::Percentage, ..self })
    }
}

fn parse_value(raw: &str, label: &str, period: &str) -> Result<f64> {
    let tok = raw.split_whitespace().next().unwrap_or("");
    let missing = || CliError::MissingValue { label: label.to_string(), period: period.to_string() };
    if matches!(tok, "" | ":" | "NA" | "na" | "NaN" | "nan" | ".") {
        return Err(missing());
    }
    let v: f64 = tok.parse().map_err(|_| missing())?;
    if !v.is_finite() {
        return Err(missing());
    }
    Ok(v)
}

fn build_series(label: &str, mut obs: Vec<(Period, f64)>) -> Result<(TimeSeries, Period, Period)> {
    obs.sort_by_key(|(p, _)| *p);
    for w in obs.windows(2) {
        if w[1].0.ordinal != w[0].0.ordinal + 1 {
            return Err(CliError::NonContiguousPeriods {
                label: label.to_string(),
                before: w[0].0.to_string(),
                after: w[1].0.to_string(),
            });
        }
    }
    let (first, last) = match (obs.first(), obs.last()) {
        (Some(f), Some(l)) => (f.0, l.0),
        _ => return Err(tsclust::Error::DegenerateSeries { label: label.to_string(), len: 0 }.into()),
    };
    let values = obs.into_iter().map(|(_, v)| v).collect();
    Ok((TimeSeries::new(label, first.frequency, values)?, first, last))
}

fn csv_err(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Csv { path: path.display().to_string(), msg: e.to_string() }
}

/// Loads a corpus from a CSV file.
pub fn load_csv(
    path: &Path,
    layout: Layout,
    filter: &DateFilter,
    columns: &LongColumns,
    value_mode: ValueMode,
) -> Result<Corpus> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_err(path, e))?;
    let headers = rdr.headers().map_err(|e| csv_err(path, e))?.clone();
    let bounds = filter.bounds()?;
    // Insertion order of labels is kept for the output.
    let mut order: Vec<String> = Vec::new();
    let mut obs: BTreeMap<String, Vec<(Period, f64)>> = BTreeMap::new();
    let mut freq: Option<Frequency> = None;
    let mut check_freq = |p: Period| -> Result<()> {
        match freq {
            None => {
                freq = Some(p.frequency);
                Ok(())
            }
            Some(f) if f == p.frequency => Ok(()),
            Some(_) => Err(CliError::MixedFrequency),
        }
    };

    match layout {
        Layout::Wide => {
            if headers.len() < 2 {
                return Err(csv_err(path, "wide layout needs a period column and at least one series"));
            }
            for h in headers.iter().skip(1) {
                if obs.insert(h.to_string(), Vec::new()).is_some() {
                    return Err(tsclust::Error::DuplicateLabel(h.to_string()).into());
                }
                order.push(h.to_string());
            }
            for row in rdr.records() {
                let row = row.map_err(|e| csv_err(path, e))?;
                let period = Period::parse(&row[0])?;
                check_freq(period)?;
                if !admits(&bounds, period)? {
                    continue;
                }
                for (label, raw) in order.iter().zip(row.iter().skip(1)) {
                    let v = parse_value(raw, label, &row[0])?;
                    obs.get_mut(label).expect("header label").push((period, v));
                }
                if row.len() < headers.len() {
                    let label = &order[row.len() - 1];
                    return Err(CliError::MissingValue { label: label.clone(), period: row[0].to_string() });
                }
            }
        }
        Layout::Long => {
            let col = |name: &str| {
                headers
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| csv_err(path, format!("missing column `{name}`")))
            };
            let (li, pi, vi) = (col(&columns.label)?, col(&columns.period)?, col(&columns.value)?);
            let mut seen = std::collections::HashSet::new();
            for row in rdr.records() {
                let row = row.map_err(|e| csv_err(path, e))?;
                let (label, praw) = (row[li].to_string(), &row[pi]);
                let period = Period::parse(praw)?;
                check_freq(period)?;
                if !seen.insert((label.clone(), period)) {
                    return Err(csv_err(path, format!("duplicate observation for `{label}` at {praw}")));
                }
                if !admits(&bounds, period)? {
                    continue;
                }
                let v = parse_value(&row[vi], &label, praw)?;
                if !obs.contains_key(&label) {
                    order.push(label.clone());
                }
                obs.entry(label).or_default().push((period, v));
            }
        }
    }

    let mut series = Vec::with_capacity(order.len());
    let (mut first, mut last): (Option<Period>, Option<Period>) = (None, None);
    for label in &order {
        let (s, f, l) = build_series(label, obs.remove(label).unwrap_or_default())?;
        first = Some(first.map_or(f, |x| x.min(f)));
        last = Some(last.map_or(l, |x| x.max(l)));
        series.push(s);
    }
    if series.is_empty() {
        return Err(tsclust::Error::EmptyCorpus.into());
    }
    Ok(Corpus { series, value_mode, source: path.display().to_string(), first, last })
}
