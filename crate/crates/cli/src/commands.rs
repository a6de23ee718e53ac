//! The four commands. Each returns the paths it wrote, in write order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use tsclust::bench::{aggregate, records_csv, run_grid, RunMeta};
use tsclust::cluster::{agglomerate_with, rule_of_thumb, to_ascii, to_newick, Dendrogram};
use tsclust::series::synth::synthetic_corpus;
use tsclust::series::{concat_prefix_suffix, negate};
use tsclust::{DistanceMatrix, Error, MeasureId, MeasureSpec, TimeSeries};

use crate::config::{Derived, Format, RunConfig};
use crate::corpus::{load_csv, Corpus};
use crate::error::{CliError, Result};

/// Measure used by `dist`, `cluster` and `pairstage` when none is configured.
pub const DEFAULT_CLUSTER_MEASURE: MeasureId = MeasureId::Cdm;

/// A loaded corpus and the stem used to name its output files.
#[derive(Debug, Clone)]
pub struct NamedCorpus {
    pub name: String,
    pub corpus: Corpus,
}

fn apply_derived(corpus: &mut Corpus, derived: &[Derived]) -> Result<()> {
    let find = |series: &[TimeSeries], label: &str| {
        series
            .iter()
            .find(|s| s.label() == label)
            .cloned()
            .ok_or_else(|| CliError::Core(Error::LabelNotFound(label.to_string())))
    };
    for d in derived {
        let new = match d {
            Derived::Negate { label, source } => negate(&find(&corpus.series, source)?)?.relabel(label.clone())?,
            Derived::ConcatPrefixSuffix { label, prefix, suffix, cut } => concat_prefix_suffix(
                &find(&corpus.series, prefix)?,
                &find(&corpus.series, suffix)?,
                *cut,
                label,
            )?,
        };
        if corpus.series.iter().any(|s| s.label() == new.label()) {
            return Err(Error::DuplicateLabel(new.label().to_string()).into());
        }
        corpus.series.push(new);
    }
    Ok(())
}

/// Loads every configured corpus (or the synthetic one).
pub fn load_corpora(cfg: &RunConfig) -> Result<Vec<NamedCorpus>> {
    let mut out = Vec::new();
    if let Some(mode) = cfg.synthetic {
        let corpus = Corpus {
            series: synthetic_corpus(mode, cfg.seed),
            value_mode: mode,
            source: format!("synthetic:{}", mode.as_str()),
            first: None,
            last: None,
        };
        out.push(NamedCorpus { name: format!("synthetic_{}", mode.as_str()), corpus });
    }
    for path in &cfg.inputs {
        let mut corpus = load_csv(path, cfg.layout, &cfg.date_filter(), &cfg.columns, cfg.value_mode)?;
        if cfg.pct_change {
            corpus = corpus.into_pct_change()?;
        }
        let stem = path.file_stem().map_or_else(|| "input".to_string(), |s| s.to_string_lossy().into_owned());
        let mut name = stem.clone();
        let mut k = 2;
        while out.iter().any(|c: &NamedCorpus| c.name == name) {
            name = format!("{stem}_{k}");
            k += 1;
        }
        out.push(NamedCorpus { name, corpus });
    }
    if out.is_empty() {
        return Err(CliError::Config("no input files and no synthetic corpus configured".into()));
    }
    for c in &mut out {
        apply_derived(&mut c.corpus, &cfg.derived)?;
    }
    Ok(out)
}

fn write(dir: &Path, name: &str, contents: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    written.push(path);
    Ok(())
}

fn comment_block(prefix: &str, lines: &[String]) -> String {
    lines.iter().map(|l| format!("{prefix}{l}\n")).collect()
}

fn corpus_line(c: &NamedCorpus) -> String {
    let mut s = format!("corpus={} n={} mode={}", c.corpus.source, c.corpus.series.len(), c.corpus.value_mode.as_str());
    if let (Some(a), Some(b)) = (c.corpus.first, c.corpus.last) {
        let _ = write!(s, " periods={a}..{b}");
    }
    s
}

/// Writes `<corpus>_dist_<measure>.csv` for every corpus and measure.
pub fn cmd_dist(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let header = cfg.header("dist")?;
    let corpora = load_corpora(cfg)?;
    let mut written = Vec::new();
    for c in &corpora {
        for m in cfg.measure_specs(&[DEFAULT_CLUSTER_MEASURE]) {
            let d = DistanceMatrix::from_series(&m, &c.corpus.series)?;
            let lines = [header.clone(), corpus_line(c), format!("measure={}", m.id)];
            let text = comment_block("# ", &lines) + &d.to_csv();
            write(&cfg.out_dir, &format!("{}_dist_{}.csv", c.name, m.id), &text, &mut written)?;
        }
    }
    Ok(written)
}

fn dendrogram(cfg: &RunConfig, m: &MeasureSpec, series: &[TimeSeries]) -> Result<Dendrogram> {
    let d = DistanceMatrix::from_series(m, series)?;
    Ok(agglomerate_with(&d, cfg.linkage, cfg.geometry)?)
}

/// Newick tree, ASCII dendrogram and (when `cut_k > 0`) a partition CSV
/// for every corpus and measure.
pub fn cmd_cluster(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let header = cfg.header("cluster")?;
    let corpora = load_corpora(cfg)?;
    let mut written = Vec::new();
    for c in &corpora {
        for m in cfg.measure_specs(&[DEFAULT_CLUSTER_MEASURE]) {
            let dend = dendrogram(cfg, &m, &c.corpus.series)?;
            let stem = format!("{}_{}_{}", c.name, m.id, cfg.linkage.as_str());
            let lines = [
                header.clone(),
                corpus_line(c),
                format!("measure={} linkage={} geometry={:?}", m.id, cfg.linkage.as_str(), cfg.geometry).to_lowercase(),
            ];
            if cfg.wants(Format::Newick) {
                let mut text: String = lines.iter().map(|l| format!("[{}]\n", l.replace(['[', ']'], ""))).collect();
                text.push_str(&to_newick(&dend));
                text.push('\n');
                write(&cfg.out_dir, &format!("{stem}.nwk"), &text, &mut written)?;
            }
            if cfg.wants(Format::Ascii) {
                let text = comment_block("# ", &lines) + &to_ascii(&dend);
                write(&cfg.out_dir, &format!("{stem}.txt"), &text, &mut written)?;
            }
            if cfg.wants(Format::Csv) && cfg.cut_k > 0 {
                let text = comment_block("# ", &lines) + &dend.partition_csv(cfg.cut_k)?;
                write(&cfg.out_dir, &format!("{stem}_k{}.csv", cfg.cut_k), &text, &mut written)?;
            }
        }
    }
    Ok(written)
}

/// Per corpus and regime: a summary report (`.csv`, `.txt`) and the raw
/// ratio records. Regimes are checked against every corpus's value mode
/// before any ratio is computed.
pub fn cmd_benchmark(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let header = cfg.header("benchmark")?;
    let corpora = load_corpora(cfg)?;
    let plans = corpora
        .iter()
        .map(|c| cfg.resolve_regimes(c.corpus.value_mode))
        .collect::<Result<Vec<_>>>()?;
    let measures = cfg.measure_specs(&MeasureId::ALL);
    let grid = cfg.grid();
    let mut written = Vec::new();
    for (c, regimes) in corpora.iter().zip(plans) {
        let mode = c.corpus.value_mode;
        for kind in regimes {
            let p = cfg.perturbation(kind, mode);
            let outcome = run_grid(&measures, &c.corpus.series, &p, &grid)?;
            let meta = RunMeta {
                regime: kind.as_str().to_string(),
                corpus: c.corpus.source.clone(),
                seed: cfg.seed,
                perturbation: Some(p),
                degenerate: outcome.degenerate_count(),
                skipped: outcome.skipped.len(),
            };
            let mut report = aggregate(&outcome.records).with_meta(meta);
            // Measures without any record still get a row.
            for m in &measures {
                if report.summary(m.id).is_none() {
                    report.summaries.push(tsclust::bench::MeasureSummary {
                        measure: m.id,
                        global_max: f64::NAN,
                        exceed_count: 0,
                        records: 0,
                        cells: 0,
                        rank_first: 0,
                        rank_top: 0,
                    });
                }
            }
            report.summaries.sort_by_key(|s| s.measure);
            let lines = [header.clone(), corpus_line(c)];
            let stem = format!("{}_bench_{}_{}", c.name, mode.as_str(), kind.as_str());
            if cfg.wants(Format::Csv) {
                write(&cfg.out_dir, &format!("{stem}.csv"), &report.to_csv(&lines), &mut written)?;
                let records = records_csv(&outcome.records, &lines);
                write(&cfg.out_dir, &format!("{stem}_records.csv"), &records, &mut written)?;
            }
            if cfg.wants(Format::Ascii) {
                write(&cfg.out_dir, &format!("{stem}.txt"), &report.to_text(&lines), &mut written)?;
            }
        }
    }
    Ok(written)
}

/// One row per stage observation in `pairstage.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct StageRow {
    pub corpus: String,
    pub measure: MeasureId,
    pub a: String,
    pub b: String,
    pub n: usize,
    pub stage: usize,
}

pub fn pair_stages(cfg: &RunConfig, corpora: &[NamedCorpus]) -> Result<Vec<StageRow>> {
    if cfg.pairs.is_empty() {
        return Err(CliError::Config("pairstage needs at least one pair".into()));
    }
    let mut rows = Vec::new();
    for c in corpora {
        for (a, b) in &cfg.pairs {
            for label in [a, b] {
                if !c.corpus.series.iter().any(|s| s.label() == label) {
                    return Err(Error::LabelNotFound(format!("{label} (in {})", c.corpus.source)).into());
                }
            }
        }
        for m in cfg.measure_specs(&[DEFAULT_CLUSTER_MEASURE]) {
            let dend = dendrogram(cfg, &m, &c.corpus.series)?;
            for (a, b) in &cfg.pairs {
                rows.push(StageRow {
                    corpus: c.name.clone(),
                    measure: m.id,
                    a: a.clone(),
                    b: b.clone(),
                    n: dend.n_leaves(),
                    stage: dend.merge_stage(a, b)?,
                });
            }
        }
    }
    Ok(rows)
}

/// `pairstage.csv` plus `pairstage_hist.csv`, whose counts for each
/// `(measure, pair)` sum to the number of corpora.
pub fn cmd_pairstage(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let header = cfg.header("pairstage")?;
    let corpora = load_corpora(cfg)?;
    let rows = pair_stages(cfg, &corpora)?;
    let lines = [header, format!("corpora={} linkage={}", corpora.len(), cfg.linkage.as_str())];
    let field = |s: &str| {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };

    let mut text = comment_block("# ", &lines);
    text.push_str("corpus,measure,a,b,n,stage,rule_of_thumb\n");
    let mut hist: BTreeMap<(MeasureId, String, String, usize), usize> = BTreeMap::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{}",
            field(&r.corpus),
            r.measure,
            field(&r.a),
            field(&r.b),
            r.n,
            r.stage,
            rule_of_thumb(r.stage)
        );
        *hist.entry((r.measure, r.a.clone(), r.b.clone(), r.stage)).or_default() += 1;
    }
    let mut written = Vec::new();
    write(&cfg.out_dir, "pairstage.csv", &text, &mut written)?;

    let mut text = comment_block("# ", &lines);
    text.push_str("measure,a,b,stage,count\n");
    for ((m, a, b, stage), count) in &hist {
        let _ = writeln!(text, "{m},{},{},{stage},{count}", field(a), field(b));
    }
    write(&cfg.out_dir, "pairstage_hist.csv", &text, &mut written)?;
    Ok(written)
}
