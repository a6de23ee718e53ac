/// Unconstrained dynamic time warping with local cost `|x_i - y_j|` and the
/// symmetric unit step pattern (diagonal, horizontal and vertical steps all
/// weigh 1). Accepts unequal lengths; returns 0 for an empty input.
pub fn d_dtw(x: &[f64], y: &[f64]) -> f64 {
    if x.is_empty() || y.is_empty() {
        return 0.0;
    }
    let m = y.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![f64::INFINITY; m];
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            let cost = (xi - yj).abs();
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[j],
                _ => prev[j - 1].min(prev[j]).min(cur[j - 1]),
            };
            cur[j] = cost + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}
