//! Two-sided quasi-isometry constant fitting.

use serde::{Deserialize, Serialize};

/// Constants `(k, c)` with `model/k - c <= target <= k*model + c` on a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QiFit {
    pub k: f64,
    pub c: f64,
    /// Index of the sample pair that determines `c` at the fitted `k`.
    pub worst: Option<usize>,
}

/// Smallest additive constant that works for multiplicative constant `k`.
pub fn additive_for(samples: &[(f64, f64)], k: f64) -> (f64, Option<usize>) {
    let mut best = (0.0_f64, None);
    for (i, &(target, model)) in samples.iter().enumerate() {
        let need = (model / k - target).max(target - k * model);
        if need > best.0 {
            best = (need, Some(i));
        }
    }
    best
}

/// Fits `(k, c)` minimizing `k + c` over `k >= 1`.
///
/// Each sample is `(target, model)`. The additive constant required at a
/// given `k` is a maximum of convex functions of `k`, so `k + c(k)` is convex
/// and a ternary search on `[1, k_max]` finds its minimum.
pub fn fit_qi(samples: &[(f64, f64)]) -> QiFit {
    let k_max = 64.0;
    let objective = |k: f64| k + additive_for(samples, k).0;
    let (mut lo, mut hi) = (1.0_f64, k_max);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if objective(m1) <= objective(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let k = round6((lo + hi) / 2.0);
    let (c, worst) = additive_for(samples, k);
    QiFit { k, c: round6(c), worst }
}

/// Integer-valued variant: the smallest integer `c` for each integer `k`,
/// choosing the pair minimizing `k + c`, ties to smaller `k`.
pub fn fit_qi_integer(samples: &[(f64, f64)], k_max: u32) -> QiFit {
    let mut best: Option<QiFit> = None;
    for k in 1..=k_max.max(1) {
        let (c, worst) = additive_for(samples, k as f64);
        let c = (c - 1e-9).ceil().max(0.0);
        let cand = QiFit { k: k as f64, c, worst };
        if best.is_none_or(|b| cand.k + cand.c < b.k + b.c) {
            best = Some(cand);
        }
    }
    best.unwrap_or(QiFit { k: 1.0, c: 0.0, worst: None })
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}
