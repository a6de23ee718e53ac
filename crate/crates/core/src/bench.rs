//! The warp/delay ratio grid and its rank statistics.
//!
//! For a measure `M`, series `X`, warp `α` and delay `δ` the ratio is
//! `R = d_M(B, D̃) / d_M(B, W)` where `B` is the base prefix, `D̃` the delayed
//! window after perturbation and `W` the warped series. Good measures keep
//! `R` below 1. Per `(Δ, α)` cell, measures are ranked by `max_X R`
//! (ascending, ties share the better rank).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::measures::{dissimilarity, MeasureId, MeasureSpec};
use crate::series::{base_series, delayed_series, perturb_with_sigma, warped_series, Perturbation};
use crate::{Error, Result, TimeSeries, WarpDelayParams};

/// Number of top places counted by [`MeasureSummary::rank_top`].
pub const TOP_K: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRecord {
    pub measure: MeasureId,
    pub series: String,
    /// Delay in quarters.
    pub delta: u32,
    pub alpha: f64,
    pub ratio: f64,
}

impl RatioRecord {
    fn sort_key(&self) -> (MeasureId, &str, u32, u64) {
        (self.measure, self.series.as_str(), self.delta, self.alpha.to_bits())
    }
}

/// Windows shared by every measure for one `(series, cell)`.
struct Windows {
    base: TimeSeries,
    delayed: TimeSeries,
    warped: TimeSeries,
}

fn windows(x: &TimeSeries, params: WarpDelayParams, p: &Perturbation) -> Result<Windows> {
    let delay = params.delay_points(x.frequency());
    let base = base_series(x, params.alpha)?;
    let delayed = delayed_series(x, params.alpha, delay)?;
    let delayed = perturb_with_sigma(&delayed, p, x.std_dev())?;
    let warped = warped_series(x, params.alpha)?;
    Ok(Windows { base, delayed, warped })
}

fn ratio_on(m: &MeasureSpec, w: &Windows) -> Result<f64> {
    let num = dissimilarity(m, &w.base, &w.delayed)?;
    let den = dissimilarity(m, &w.base, &w.warped)?;
    if den == 0.0 {
        return Err(Error::DegenerateRatio);
    }
    let r = num / den;
    if !r.is_finite() {
        return Err(Error::NonFiniteDistance { measure: m.id.as_str() });
    }
    Ok(r)
}

/// One ratio. The perturbation's σ reference is the full series `x`.
pub fn ratio(m: &MeasureSpec, x: &TimeSeries, params: WarpDelayParams, p: &Perturbation) -> Result<RatioRecord> {
    let w = windows(x, params, p)?;
    Ok(RatioRecord {
        measure: m.id,
        series: x.label().to_string(),
        delta: params.delta_quarters,
        alpha: params.alpha,
        ratio: ratio_on(m, &w)?,
    })
}

/// Warp factors and delays (in quarters) spanning the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub alphas: Vec<f64>,
    pub deltas: Vec<u32>,
}

impl Grid {
    /// `α = 1.4, 1.6, …, 3.0` and `Δ = 2, …, 10`: 81 cells.
    pub fn standard() -> Self {
        Self {
            alphas: (0..9).map(|k| f64::from(14 + 2 * k) / 10.0).collect(),
            deltas: (2..=10).collect(),
        }
    }

    pub fn cells(&self) -> Result<Vec<WarpDelayParams>> {
        let mut out = Vec::with_capacity(self.alphas.len() * self.deltas.len());
        for &delta in &self.deltas {
            for &alpha in &self.alphas {
                out.push(WarpDelayParams::new(alpha, delta)?);
            }
        }
        Ok(out)
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SkipReason {
    /// The delayed window does not fit in the series.
    TooShort,
    /// The warped-series distance is zero.
    DegenerateRatio,
    /// The measure or perturbation rejected the input.
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    /// `None` when the whole `(series, cell)` was skipped for every measure.
    pub measure: Option<MeasureId>,
    pub series: String,
    pub delta: u32,
    pub alpha: f64,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GridOutcome {
    pub records: Vec<RatioRecord>,
    pub skipped: Vec<Skipped>,
}

impl GridOutcome {
    pub fn degenerate_count(&self) -> usize {
        self.skipped.iter().filter(|s| s.reason == SkipReason::DegenerateRatio).count()
    }
}

type CellResult = (Vec<RatioRecord>, Vec<Skipped>);

fn evaluate_cell(measures: &[MeasureSpec], x: &TimeSeries, params: WarpDelayParams, p: &Perturbation) -> CellResult {
    let skip = |measure, reason| Skipped {
        measure,
        series: x.label().to_string(),
        delta: params.delta_quarters,
        alpha: params.alpha,
        reason,
    };
    if !params.fits(x.len(), x.frequency()) {
        return (Vec::new(), vec![skip(None, SkipReason::TooShort)]);
    }
    let w = match windows(x, params, p) {
        Ok(w) => w,
        Err(Error::DegenerateSeries { .. }) => return (Vec::new(), vec![skip(None, SkipReason::TooShort)]),
        Err(e) => return (Vec::new(), vec![skip(None, SkipReason::Failed(e.to_string()))]),
    };
    let mut records = Vec::with_capacity(measures.len());
    let mut skipped = Vec::new();
    for m in measures {
        match ratio_on(m, &w) {
            Ok(ratio) => records.push(RatioRecord {
                measure: m.id,
                series: x.label().to_string(),
                delta: params.delta_quarters,
                alpha: params.alpha,
                ratio,
            }),
            Err(Error::DegenerateRatio) => skipped.push(skip(Some(m.id), SkipReason::DegenerateRatio)),
            Err(e) => skipped.push(skip(Some(m.id), SkipReason::Failed(e.to_string()))),
        }
    }
    (records, skipped)
}

/// Every `(measure, series, Δ, α)` ratio for one perturbation regime.
/// Records come back sorted by measure, series label, `Δ`, `α`.
pub fn run_grid(
    measures: &[MeasureSpec],
    corpus: &[TimeSeries],
    perturbation: &Perturbation,
    grid: &Grid,
) -> Result<GridOutcome> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if measures.is_empty() || grid.alphas.is_empty() || grid.deltas.is_empty() {
        return Err(Error::EmptyGrid);
    }
    perturbation.validate()?;
    let cells = grid.cells()?;
    let tasks: Vec<(&TimeSeries, WarpDelayParams)> =
        corpus.iter().flat_map(|x| cells.iter().map(move |c| (x, *c))).collect();

    #[cfg(feature = "parallel")]
    let results: Vec<CellResult> = {
        use rayon::prelude::*;
        tasks.par_iter().map(|(x, c)| evaluate_cell(measures, x, *c, perturbation)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<CellResult> = tasks.iter().map(|(x, c)| evaluate_cell(measures, x, *c, perturbation)).collect();

    let mut out = GridOutcome::default();
    for (r, s) in results {
        out.records.extend(r);
        out.skipped.extend(s);
    }
    out.records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

/// `(max R, number of R > 1)` for one measure, `None` without records.
pub fn goodness(records: &[RatioRecord], measure: MeasureId) -> Option<(f64, usize)> {
    let mut it = records.iter().filter(|r| r.measure == measure).peekable();
    it.peek()?;
    Some(it.fold((f64::NEG_INFINITY, 0), |(mx, n), r| (mx.max(r.ratio), n + usize::from(r.ratio > 1.0))))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSummary {
    pub measure: MeasureId,
    pub global_max: f64,
    pub exceed_count: usize,
    pub records: usize,
    /// Cells in which the measure has at least one record.
    pub cells: usize,
    pub rank_first: usize,
    pub rank_top: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRanking {
    pub delta: u32,
    pub alpha: f64,
    /// `(measure, max over series of R, rank)`, best first.
    pub entries: Vec<(MeasureId, f64, usize)>,
}

/// Run description carried into report headers.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub regime: String,
    pub corpus: String,
    pub seed: u64,
    pub perturbation: Option<Perturbation>,
    pub degenerate: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub meta: RunMeta,
    /// Cells with at least one record.
    pub cells: usize,
    pub summaries: Vec<MeasureSummary>,
    pub rankings: Vec<CellRanking>,
}

/// Per-measure maxima and per-cell rank counts.
pub fn aggregate(records: &[RatioRecord]) -> BenchReport {
    let mut cell_max: BTreeMap<(u32, u64), BTreeMap<MeasureId, f64>> = BTreeMap::new();
    let mut per_measure: BTreeMap<MeasureId, MeasureSummary> = BTreeMap::new();
    for r in records {
        let cell = cell_max.entry((r.delta, r.alpha.to_bits())).or_default();
        let slot = cell.entry(r.measure).or_insert(f64::NEG_INFINITY);
        *slot = slot.max(r.ratio);
        let s = per_measure.entry(r.measure).or_insert(MeasureSummary {
            measure: r.measure,
            global_max: f64::NEG_INFINITY,
            exceed_count: 0,
            records: 0,
            cells: 0,
            rank_first: 0,
            rank_top: 0,
        });
        s.global_max = s.global_max.max(r.ratio);
        s.exceed_count += usize::from(r.ratio > 1.0);
        s.records += 1;
    }
    let mut rankings = Vec::with_capacity(cell_max.len());
    for ((delta, alpha_bits), maxima) in &cell_max {
        let mut entries: Vec<(MeasureId, f64, usize)> = maxima
            .iter()
            .map(|(&m, &v)| (m, v, 1 + maxima.values().filter(|&&o| o < v).count()))
            .collect();
        entries.sort_by(|a, b| a.2.cmp(&b.2).then(a.0.cmp(&b.0)));
        for &(m, _, rank) in &entries {
            let s = per_measure.get_mut(&m).expect("measure seen in records");
            s.cells += 1;
            s.rank_first += usize::from(rank == 1);
            s.rank_top += usize::from(rank <= TOP_K);
        }
        rankings.push(CellRanking { delta: *delta, alpha: f64::from_bits(*alpha_bits), entries });
    }
    BenchReport {
        meta: RunMeta::default(),
        cells: cell_max.len(),
        summaries: per_measure.into_values().collect(),
        rankings,
    }
}

impl BenchReport {
    pub fn with_meta(mut self, meta: RunMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn summary(&self, m: MeasureId) -> Option<&MeasureSummary> {
        self.summaries.iter().find(|s| s.measure == m)
    }

    fn header(&self, comment: &str, extra: &[String]) -> String {
        let mut out = String::new();
        for line in extra {
            let _ = writeln!(out, "{comment} {line}");
        }
        let m = &self.meta;
        let _ = writeln!(
            out,
            "{comment} regime={} corpus={} seed={} cells={} degenerate={} skipped={}",
            m.regime, m.corpus, m.seed, self.cells, m.degenerate, m.skipped
        );
        if let Some(p) = &m.perturbation {
            let _ = writeln!(
                out,
                "{comment} scale_factor={} shift_sigmas={} noise_level={} noise_scale={:?}",
                p.scale_factor, p.shift_sigmas, p.noise_level, p.noise_scale
            );
        }
        out
    }

    /// One row per measure.
    pub fn to_csv(&self, header_lines: &[String]) -> String {
        let mut out = self.header("#", header_lines);
        out.push_str("measure,global_max,exceed_count,rank_first,rank_top5,records,cells\n");
        for s in &self.summaries {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                s.measure, s.global_max, s.exceed_count, s.rank_first, s.rank_top, s.records, s.cells
            );
        }
        out
    }

    /// Aligned table: global maximum, times ranked first, times in the top five.
    pub fn to_text(&self, header_lines: &[String]) -> String {
        let mut out = self.header("#", header_lines);
        let _ = writeln!(out, "{:<10} {:>12} {:>8} {:>8} {:>8}", "measure", "global max", "R>1", "first", "top5");
        for s in &self.summaries {
            let _ = writeln!(
                out,
                "{:<10} {:>12.4} {:>8} {:>8} {:>8}",
                s.measure.as_str(),
                s.global_max,
                s.exceed_count,
                s.rank_first,
                s.rank_top
            );
        }
        out
    }
}

/// Records as CSV rows `measure,series,delta,alpha,ratio`.
pub fn records_csv(records: &[RatioRecord], header_lines: &[String]) -> String {
    let mut out = String::new();
    for line in header_lines {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str("measure,series,delta,alpha,ratio\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.measure,
            crate::matrix::csv_field(&r.series),
            r.delta,
            r.alpha,
            r.ratio
        );
    }
    out
}
