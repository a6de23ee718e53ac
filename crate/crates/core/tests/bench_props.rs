mod support;

use proptest::prelude::*;
use tsclust::bench::{aggregate, ratio, run_grid, Grid};
use tsclust::{Frequency, MeasureId, MeasureSpec, PerturbKind, Perturbation, TimeSeries, WarpDelayParams};

const HOMOGENEOUS: [MeasureId; 7] = [
    MeasureId::Euclidean,
    MeasureId::Manhattan,
    MeasureId::Infnorm,
    MeasureId::Dtw,
    MeasureId::Sts,
    MeasureId::Cid,
    MeasureId::Fourier,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratio_is_scale_equivariant(seed in 0u64..500, c in 0.1f64..50.0, a in 0usize..9, delta in 2u32..=10, scale in any::<bool>()) {
        let v = support::random_series(&mut support::rng(seed), 80);
        let x = TimeSeries::new("x", Frequency::Quarterly, v.clone()).unwrap();
        let cx = TimeSeries::new("x", Frequency::Quarterly, v.iter().map(|t| c * t).collect()).unwrap();
        let params = WarpDelayParams::new(Grid::standard().alphas[a], delta).unwrap();
        let kind = if scale { PerturbKind::Scale } else { PerturbKind::None };
        let p = Perturbation::absolute(kind, 0);
        for id in HOMOGENEOUS {
            let m = MeasureSpec::new(id);
            if let (Ok(r1), Ok(r2)) = (ratio(&m, &x, params, &p), ratio(&m, &cx, params, &p)) {
                prop_assert!((r1.ratio - r2.ratio).abs() < 1e-8 * (1.0 + r1.ratio), "{} {} {}", id, r1.ratio, r2.ratio);
            }
        }
    }
}

#[test]
fn ratio_matches_straight_line_oracle() {
    let mut r = support::rng(8);
    for _ in 0..30 {
        let v = support::random_series(&mut r, 60);
        let x = TimeSeries::new("x", Frequency::Quarterly, v.clone()).unwrap();
        let params = WarpDelayParams::new(1.4 + 0.2 * (rand::Rng::random_range(&mut r, 0..9) as f64), 3).unwrap();
        let got = ratio(&MeasureSpec::new(MeasureId::Sts), &x, params, &Perturbation::none()).unwrap();
        let want = support::ratio_oracle(&v, params.alpha, 3, support::sts);
        assert!((got.ratio - want).abs() < 1e-9);
    }
}

#[test]
fn aggregate_counts_stay_in_bounds() {
    let corpus = tsclust::series::synth::reference_waves();
    let ms: Vec<MeasureSpec> = [MeasureId::Euclidean, MeasureId::Dtw, MeasureId::Pdc, MeasureId::Per]
        .into_iter()
        .map(MeasureSpec::new)
        .collect();
    let out = run_grid(&ms, &corpus, &Perturbation::absolute(PerturbKind::Noise, 3), &Grid::standard()).unwrap();
    let rep = aggregate(&out.records);
    assert_eq!(rep.cells, 81);
    for s in &rep.summaries {
        assert!(s.rank_first <= s.rank_top && s.rank_top <= 81);
    }
    let firsts: usize = rep.summaries.iter().map(|s| s.rank_first).sum();
    assert!(firsts >= rep.cells);
}
