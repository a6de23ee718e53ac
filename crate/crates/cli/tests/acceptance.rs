//! Acceptance suite. Prints one PASS/FAIL line per criterion with its
//! runtime against the budget, and exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p tsclust-cli --test acceptance`.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;
use tsclust::bench::{aggregate, ratio, run_grid, Grid, RatioRecord};
use tsclust::cluster::{agglomerate, rule_of_thumb, Geometry, Linkage};
use tsclust::measures::{d_dtw, d_lp, pacf, temporal_correlation, Norm};
use tsclust::series::synth::{synthetic_corpus, ValueMode};
use tsclust::series::{warp_weight, warped_series};
use tsclust::{DistanceMatrix, Frequency, MeasureId, MeasureSpec, Perturbation, TimeSeries, WarpDelayParams};
use tsclust_cli::commands::cmd_benchmark;
use tsclust_cli::config::Format;
use tsclust_cli::RunConfig;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const SEED: u64 = 2024;

fn a1_weights() -> Check {
    let mut rng = support::rng(SEED);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let t = rng.random_range(2..=200usize);
        let alpha = rng.random_range(1.0..=3.0);
        let rows = (t as f64 / alpha).floor() as usize;
        for i in 1..=rows {
            let s: f64 = (1..=t).map(|j| warp_weight(i, j, alpha)).sum();
            worst = worst.max((s - alpha).abs());
        }
    }
    ensure!(worst <= 1e-9, "worst row-sum error {worst:e}");
    for alpha in [1usize, 2, 3] {
        for blocks in 2..=60usize {
            let t = alpha * blocks;
            let x: Vec<f64> = (0..t).map(|_| rng.random_range(-100.0..100.0)).collect();
            let w = warped_series(&TimeSeries::new("x", Frequency::Abstract, x.clone()).unwrap(), alpha as f64)
                .map_err(|e| e.to_string())?;
            for (i, v) in w.values().iter().enumerate() {
                let block = &x[i * alpha..(i + 1) * alpha];
                let mean = block.iter().sum::<f64>() / alpha as f64;
                ensure!((v - mean).abs() <= 1e-12 * (1.0 + mean.abs()), "alpha {alpha} T {t} row {i}: {v} vs {mean}");
            }
        }
    }
    Ok(format!("1000 random (T, alpha), worst row-sum error {worst:.1e}; integer-alpha block means match"))
}

struct GridRuns {
    by_mode: Vec<(ValueMode, Vec<RatioRecord>, usize)>,
}

fn compression_grids() -> Result<GridRuns, String> {
    let measures = [MeasureSpec::new(MeasureId::Cdm), MeasureSpec::new(MeasureId::Ncd)];
    let mut by_mode = Vec::new();
    for mode in [ValueMode::Absolute, ValueMode::Percentage] {
        let corpus = synthetic_corpus(mode, SEED);
        let out = run_grid(&measures, &corpus, &Perturbation::none(), &Grid::standard()).map_err(|e| e.to_string())?;
        by_mode.push((mode, out.records, out.skipped.len()));
    }
    Ok(GridRuns { by_mode })
}

fn a2_goodness(runs: &GridRuns) -> Check {
    let mut parts = Vec::new();
    for (mode, records, skipped) in &runs.by_mode {
        ensure!(*skipped == 0, "{}: {skipped} skipped evaluations", mode.as_str());
        for m in [MeasureId::Cdm, MeasureId::Ncd] {
            let rs: Vec<f64> = records.iter().filter(|r| r.measure == m).map(|r| r.ratio).collect();
            ensure!(rs.len() == 12 * 81, "{} {m}: {} records", mode.as_str(), rs.len());
            let over = rs.iter().filter(|&&r| r > 1.0).count();
            let max = rs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            ensure!(over == 0, "{} {m}: {over} ratios above 1 (max {max})", mode.as_str());
            parts.push(format!("{} {m} max {max:.4}", mode.as_str()));
        }
    }
    Ok(format!("no R > 1 over 81 cells x 12 series; {}", parts.join(", ")))
}

fn a3_cdm_range(runs: &GridRuns) -> Check {
    let cdm = MeasureSpec::new(MeasureId::Cdm);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for mode in [ValueMode::Absolute, ValueMode::Percentage] {
        let corpus = synthetic_corpus(mode, SEED);
        for x in &corpus {
            for y in &corpus {
                let v = cdm.distance(x.values(), y.values()).map_err(|e| e.to_string())?;
                lo = lo.min(v);
                hi = hi.max(v);
                ensure!((0.45..=1.05).contains(&v), "cdm({}, {}) = {v}", x.label(), y.label());
            }
        }
    }
    let (mut rlo, mut rhi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (mode, records, _) in &runs.by_mode {
        for r in records.iter().filter(|r| r.measure == MeasureId::Cdm) {
            rlo = rlo.min(r.ratio);
            rhi = rhi.max(r.ratio);
            ensure!((0.43..=2.34).contains(&r.ratio), "{} {} {:?}: R = {}", mode.as_str(), r.series, (r.delta, r.alpha), r.ratio);
        }
    }
    Ok(format!("cdm values in [{lo:.4}, {hi:.4}], cdm ratios in [{rlo:.4}, {rhi:.4}]"))
}

fn a4_cluster_oracle() -> Check {
    let mut rng = support::rng(SEED);
    let mut checked = 0;
    for trial in 0..200 {
        let n = rng.random_range(3..=8);
        let d = support::random_matrix(&mut rng, n);
        for linkage in Linkage::ALL {
            let t = agglomerate(&d, linkage).map_err(|e| e.to_string())?;
            let oracle = support::cluster_oracle(&d, linkage, Geometry::Squared);
            support::compare_with_oracle(&t, &oracle, 1e-9).map_err(|e| format!("trial {trial} {linkage:?}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} trees (200 matrices x 7 linkages) match the set-definition oracle"))
}

fn a5_measure_properties() -> Check {
    let mut rng = support::rng(SEED + 5);
    let series: Vec<Vec<f64>> = (0..500)
        .map(|_| {
            let len = rng.random_range(30..=80);
            support::random_series(&mut rng, len)
        })
        .collect();
    let d = |id: MeasureId, x: &[f64], y: &[f64]| MeasureSpec::new(id).distance(x, y).map_err(|e| format!("{id}: {e}"));
    let mut pairs = 0;
    for k in 0..series.len() {
        let x = &series[k];
        let mut y = series[(k + 1) % series.len()].clone();
        y.resize(x.len(), 0.5);
        for id in MeasureId::ALL {
            let dxy = d(id, x, &y)?;
            ensure!(dxy.is_finite() && dxy >= 0.0, "series {k} {id}: d = {dxy}");
            if !id.is_compression_based() {
                let self_d = d(id, x, x)?;
                ensure!(self_d.abs() < 1e-9, "series {k} {id}: d(x, x) = {self_d}");
                ensure!(dxy == d(id, &y, x)?, "series {k} {id}: asymmetric");
            }
        }
        let c = rng.random_range(0.1..20.0);
        let b = rng.random_range(-50.0..50.0);
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        let sx: Vec<f64> = x.iter().map(|v| v + b).collect();
        let ax: Vec<f64> = x.iter().map(|v| c * v + b).collect();
        for id in [MeasureId::Cor, MeasureId::Acf, MeasureId::Pacf, MeasureId::Pdc] {
            let (p, q) = (d(id, x, &y)?, d(id, &cx, &y)?);
            ensure!((p - q).abs() < 1e-7 * (1.0 + p), "series {k} {id}: not scale invariant ({p} vs {q})");
        }
        for id in [MeasureId::Sts, MeasureId::Per] {
            let (p, q) = (d(id, x, &y)?, d(id, &sx, &y)?);
            ensure!((p - q).abs() < 1e-7 * (1.0 + p), "series {k} {id}: not shift invariant ({p} vs {q})");
        }
        let (c1, c2) = (temporal_correlation(x, &y), temporal_correlation(&sx, &y));
        if let (Ok(c1), Ok(c2)) = (c1, c2) {
            ensure!((c1 - c2).abs() < 1e-9, "series {k}: temporal correlation not shift invariant");
        }
        ensure!(d_dtw(x, &y) <= d_lp(x, &y, Norm::L1) + 1e-9, "series {k}: dtw > L1");
        ensure!((d_dtw(x, &y) - support::dtw(x, &y)).abs() < 1e-9, "series {k}: dtw differs from full-matrix oracle");
        ensure!(d(MeasureId::Pdc, x, &ax)? == 0.0, "series {k}: pdc not affine invariant");
        pairs += 1;
    }
    let ar = tsclust::series::synth::ar1("ar", Frequency::Abstract, 500, 0.6, 0.0, SEED).map_err(|e| e.to_string())?;
    let p = pacf(ar.values(), 10).map_err(|e| e.to_string())?;
    ensure!((p[0] - 0.6).abs() <= 0.15, "pacf lag 1 = {}", p[0]);
    for (k, v) in p.iter().enumerate() {
        let oracle = support::pacf_yule_walker(ar.values(), k + 1);
        ensure!((v - oracle).abs() < 1e-9, "pacf lag {}: {v} vs Yule-Walker {oracle}", k + 1);
    }
    Ok(format!("{pairs} seeded series pass all property checks; AR(1) pacf lag 1 = {:.4}", p[0]))
}

fn a6_grid_accounting() -> Check {
    let grid = Grid::standard();
    let cells = grid.cells().map_err(|e| e.to_string())?.len();
    ensure!(cells == 81, "{cells} cells");
    let corpus = tsclust::series::synth::reference_waves();
    let measures: Vec<MeasureSpec> = MeasureId::ALL.into_iter().map(MeasureSpec::new).collect();
    let out = run_grid(&measures, &corpus, &Perturbation::none(), &grid).map_err(|e| e.to_string())?;
    let report = aggregate(&out.records);
    ensure!(report.cells == 81, "{} populated cells", report.cells);
    for s in &report.summaries {
        ensure!(s.rank_first <= s.rank_top && s.rank_top <= 81, "{}: first {} top5 {}", s.measure, s.rank_first, s.rank_top);
    }
    let single = run_grid(&measures[..1], &corpus, &Perturbation::none(), &grid).map_err(|e| e.to_string())?;
    let r = aggregate(&single.records);
    let s = &r.summaries[0];
    ensure!(s.rank_first == r.cells && r.cells == 81, "single measure ranked first in {} of {} cells", s.rank_first, r.cells);
    Ok(format!("81 cells, {} measures satisfy first <= top5 <= 81, single-measure run first in 81/81", report.summaries.len()))
}

fn a7_merge_stage() -> Check {
    let mut rng = support::rng(SEED + 7);
    let mut base: Vec<Vec<f64>> = (0..14).map(|_| support::random_series(&mut rng, 60)).collect();
    for (src, dst) in [(0, 1), (2, 3)] {
        base[dst] = base[src].iter().map(|v| v + rng.random_range(-1e-3..1e-3)).collect();
    }
    let series: Vec<TimeSeries> = base
        .into_iter()
        .enumerate()
        .map(|(i, v)| TimeSeries::new(format!("v{}", i + 1), Frequency::Quarterly, v).unwrap())
        .collect();
    let mut stages = Vec::new();
    for id in [MeasureId::Euclidean, MeasureId::Dtw] {
        let d = DistanceMatrix::from_series(&MeasureSpec::new(id), &series).map_err(|e| e.to_string())?;
        for linkage in Linkage::ALL {
            let t = agglomerate(&d, linkage).map_err(|e| e.to_string())?;
            for (a, b) in [("v1", "v2"), ("v3", "v4")] {
                let stage = t.merge_stage(a, b).map_err(|e| e.to_string())?;
                let (ia, ib) = (d.index_of(a).unwrap(), d.index_of(b).unwrap());
                let scan = 14 - (support::first_comerge(&t, ia, ib) + 1);
                ensure!(stage == scan, "{id} {linkage:?} ({a},{b}): stage {stage}, scan {scan}");
                ensure!(stage >= 3 && rule_of_thumb(stage), "{id} {linkage:?} ({a},{b}): stage {stage}");
                stages.push(stage);
            }
        }
    }
    let min = stages.iter().min().unwrap();
    Ok(format!("{} (measure, linkage, pair) cases, min stage {min}, scan agrees", stages.len()))
}

fn a8_determinism() -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = RunConfig {
        synthetic: Some(ValueMode::Absolute),
        formats: vec![Format::Csv, Format::Ascii],
        out_dir: tmp.path().join("run"),
        ..RunConfig::default()
    };
    let read = |files: Vec<std::path::PathBuf>| -> Result<Vec<(String, Vec<u8>)>, String> {
        files
            .into_iter()
            .map(|p| Ok((p.display().to_string(), std::fs::read(&p).map_err(|e| e.to_string())?)))
            .collect()
    };
    let first = read(cmd_benchmark(&cfg).map_err(|e| e.to_string())?)?;
    let second = read(cmd_benchmark(&cfg).map_err(|e| e.to_string())?)?;
    ensure!(first.len() == second.len(), "file counts differ");
    for ((p, a), (_, b)) in first.iter().zip(&second) {
        ensure!(a == b, "{p} differs between runs");
    }
    let bytes: usize = first.iter().map(|(_, b)| b.len()).sum();
    Ok(format!("{} report files ({bytes} bytes, 5 regimes, 17 measures) identical across two runs", first.len()))
}

fn a9_ratio_oracle() -> Check {
    let mut rng = support::rng(SEED + 9);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 50 {
        let len = rng.random_range(40..=200);
        let x = support::random_series(&mut rng, len);
        let alpha = rng.random_range(1.0..=3.0);
        let delta = rng.random_range(0..=10u32);
        let params = WarpDelayParams::new(alpha, delta).map_err(|e| e.to_string())?;
        if !params.fits(len, Frequency::Quarterly) {
            continue;
        }
        let (id, f): (MeasureId, fn(&[f64], &[f64]) -> f64) = match n % 3 {
            0 => (MeasureId::Euclidean, support::euclid),
            1 => (MeasureId::Dtw, support::dtw),
            _ => (MeasureId::Sts, support::sts),
        };
        let ts = TimeSeries::new("x", Frequency::Quarterly, x.clone()).unwrap();
        let got = ratio(&MeasureSpec::new(id), &ts, params, &Perturbation::none()).map_err(|e| e.to_string())?.ratio;
        let want = support::ratio_oracle(&x, alpha, delta as usize, f);
        worst = worst.max((got - want).abs());
        ensure!((got - want).abs() <= 1e-9, "{id} T={len} alpha={alpha} delta={delta}: {got} vs {want}");
        n += 1;
    }
    Ok(format!("50 ratios (euclidean, dtw, sts) match the straight-line oracle, worst error {worst:.1e}"))
}

fn main() {
    static GRIDS: OnceLock<Result<GridRuns, String>> = OnceLock::new();
    let grids = || GRIDS.get_or_init(compression_grids).as_ref().map_err(Clone::clone);
    // (id, name, budget, check). Shared grid time is charged to A2.
    let mut results = Vec::new();
    let mut run = |id: &str, name: &str, budget: u64, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(budget);
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        println!(
            "{id} {} {name}: {detail} [{:.2}s / {}s]",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        results.push(pass);
    };
    run("A1", "weights", 5, &mut a1_weights);
    run("A2", "cdm/ncd goodness", 120, &mut || grids().and_then(a2_goodness));
    run("A3", "cdm range", 60, &mut || grids().and_then(a3_cdm_range));
    run("A4", "clustering oracle", 30, &mut a4_cluster_oracle);
    run("A5", "measure properties", 120, &mut a5_measure_properties);
    run("A6", "grid accounting", 10, &mut a6_grid_accounting);
    run("A7", "merge stage", 10, &mut a7_merge_stage);
    run("A8", "end-to-end determinism", 120, &mut a8_determinism);
    run("A9", "ratio oracle", 30, &mut a9_ratio_oracle);
    let failed = results.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
