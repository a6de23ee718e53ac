//! Three interactive operations for the browser page in `www/`.
//!
//! Each operation is a plain function returning JSON so it can be tested
//! natively; the `#[wasm_bindgen]` exports only forward to them.

use serde::Serialize;
use tsclust::bench::{ratio, Grid};
use tsclust::cluster::{agglomerate, to_ascii, to_newick, Linkage};
use tsclust::series::synth::{reference_waves, synthetic_corpus, ValueMode};
use tsclust::series::{base_series, delayed_series, perturb_with_sigma, warped_series};
use tsclust::{DistanceMatrix, MeasureId, MeasureSpec, PerturbKind, Perturbation, TimeSeries, WarpDelayParams};
use wasm_bindgen::prelude::*;

type Json = Result<String, String>;

fn to_json<T: Serialize>(v: &T) -> Json {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn wave(label: &str) -> Result<TimeSeries, String> {
    reference_waves()
        .into_iter()
        .find(|w| w.label() == label)
        .ok_or_else(|| format!("unknown wave `{label}`"))
}

fn regime(name: &str, seed: u64) -> Result<Perturbation, String> {
    let kind = PerturbKind::parse(name).ok_or_else(|| format!("unknown regime `{name}`"))?;
    Ok(Perturbation::absolute(kind, seed))
}

fn mode(name: &str) -> Result<ValueMode, String> {
    match name {
        "absolute" => Ok(ValueMode::Absolute),
        "percentage" => Ok(ValueMode::Percentage),
        _ => Err(format!("unknown value mode `{name}`")),
    }
}

#[derive(Serialize)]
struct MeasureRatio {
    measure: &'static str,
    ratio: Option<f64>,
    error: Option<String>,
}

#[derive(Serialize)]
struct WarpView {
    series: Vec<f64>,
    base: Vec<f64>,
    delayed: Vec<f64>,
    warped: Vec<f64>,
    delay_points: usize,
    ratios: Vec<MeasureRatio>,
}

/// Base, perturbed delayed and warped windows of one wave, plus the ratio
/// `R` under every measure.
pub fn warp_view(label: &str, alpha: f64, delta: u32, regime_name: &str, seed: u64) -> Json {
    let x = wave(label)?;
    let params = WarpDelayParams::new(alpha, delta).map_err(|e| e.to_string())?;
    if !params.fits(x.len(), x.frequency()) {
        return Err(format!("delay of {delta} quarters with alpha {alpha} does not fit in {} points", x.len()));
    }
    let p = regime(regime_name, seed)?;
    let delay = params.delay_points(x.frequency());
    let err = |e: tsclust::Error| e.to_string();
    let base = base_series(&x, alpha).map_err(err)?;
    let delayed = perturb_with_sigma(&delayed_series(&x, alpha, delay).map_err(err)?, &p, x.std_dev()).map_err(err)?;
    let warped = warped_series(&x, alpha).map_err(err)?;
    let ratios = MeasureId::ALL
        .into_iter()
        .map(|id| match ratio(&MeasureSpec::new(id), &x, params, &p) {
            Ok(r) => MeasureRatio { measure: id.as_str(), ratio: Some(r.ratio), error: None },
            Err(e) => MeasureRatio { measure: id.as_str(), ratio: None, error: Some(e.to_string()) },
        })
        .collect();
    to_json(&WarpView {
        series: x.values().to_vec(),
        base: base.values().to_vec(),
        delayed: delayed.values().to_vec(),
        warped: warped.values().to_vec(),
        delay_points: delay,
        ratios,
    })
}

#[derive(Serialize)]
struct MergeOut {
    left: usize,
    right: usize,
    height: f64,
    size: usize,
}

#[derive(Serialize)]
struct DendrogramView {
    labels: Vec<String>,
    merges: Vec<MergeOut>,
    newick: String,
    ascii: String,
    inversions: usize,
}

/// Clusters the twelve-series synthetic corpus.
pub fn dendrogram(measure: &str, linkage: &str, value_mode: &str, seed: u64) -> Json {
    let id: MeasureId = measure.parse().map_err(|e: tsclust::Error| e.to_string())?;
    let linkage: Linkage = linkage.parse().map_err(|e: tsclust::Error| e.to_string())?;
    let corpus = synthetic_corpus(mode(value_mode)?, seed);
    let d = DistanceMatrix::from_series(&MeasureSpec::new(id), &corpus).map_err(|e| e.to_string())?;
    let t = agglomerate(&d, linkage).map_err(|e| e.to_string())?;
    to_json(&DendrogramView {
        labels: t.labels().to_vec(),
        merges: t
            .merges()
            .iter()
            .map(|m| MergeOut { left: m.left, right: m.right, height: m.height, size: m.size })
            .collect(),
        newick: to_newick(&t),
        ascii: to_ascii(&t),
        inversions: t.inversions().len(),
    })
}

#[derive(Serialize)]
struct Heatmap {
    alphas: Vec<f64>,
    deltas: Vec<u32>,
    /// `values[d][a]`: max of `R` over the four waves, `None` when undefined.
    values: Vec<Vec<Option<f64>>>,
    exceed: usize,
}

/// `max R` over the four waves for every `(Δ, α)` cell of the default grid.
pub fn ratio_heatmap(measure: &str, regime_name: &str, seed: u64) -> Json {
    let id: MeasureId = measure.parse().map_err(|e: tsclust::Error| e.to_string())?;
    let spec = MeasureSpec::new(id);
    let p = regime(regime_name, seed)?;
    let grid = Grid::standard();
    let waves = reference_waves();
    let mut exceed = 0;
    let mut values = Vec::with_capacity(grid.deltas.len());
    for &delta in &grid.deltas {
        let mut row = Vec::with_capacity(grid.alphas.len());
        for &alpha in &grid.alphas {
            let params = WarpDelayParams::new(alpha, delta).map_err(|e| e.to_string())?;
            let mut max: Option<f64> = None;
            for w in &waves {
                if let Ok(r) = ratio(&spec, w, params, &p) {
                    exceed += usize::from(r.ratio > 1.0);
                    max = Some(max.map_or(r.ratio, |m| m.max(r.ratio)));
                }
            }
            row.push(max);
        }
        values.push(row);
    }
    to_json(&Heatmap { alphas: grid.alphas, deltas: grid.deltas, values, exceed })
}

/// Comma-separated measure ids, for populating the page's selectors.
pub fn measure_ids() -> String {
    MeasureId::ALL.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(",")
}

#[wasm_bindgen(js_name = warpView)]
pub fn warp_view_js(label: &str, alpha: f64, delta: u32, regime: &str, seed: u32) -> Result<String, JsValue> {
    warp_view(label, alpha, delta, regime, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = dendrogram)]
pub fn dendrogram_js(measure: &str, linkage: &str, value_mode: &str, seed: u32) -> Result<String, JsValue> {
    dendrogram(measure, linkage, value_mode, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = ratioHeatmap)]
pub fn ratio_heatmap_js(measure: &str, regime: &str, seed: u32) -> Result<String, JsValue> {
    ratio_heatmap(measure, regime, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = measureIds)]
pub fn measure_ids_js() -> String {
    measure_ids()
}
