//! The combinatorial horoball over the integers.
//!
//! Vertices are pairs `(x, m)` with `m >= 0`. Two vertices on level `m` are
//! adjacent when `0 < |x - y| <= 2^m`, and `(x, m)` is adjacent to `(x, m + 1)`.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{fit_qi, QiFit};

/// A vertex `(x, m)` of the horoball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HoroballVertex {
    pub x: i64,
    pub m: u32,
}

impl HoroballVertex {
    pub const fn new(x: i64, m: u32) -> Self {
        HoroballVertex { x, m }
    }
}

/// A finite working interval of horizontal coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub x_lo: i64,
    pub x_hi: i64,
}

/// Horizontal reach `2^m` of an edge on level `m`, saturating.
pub fn reach(m: u32) -> i64 {
    if m >= 62 {
        i64::MAX / 4
    } else {
        1i64 << m
    }
}

/// Whether `u` and `v` are joined by an edge.
pub fn is_edge(u: HoroballVertex, v: HoroballVertex) -> bool {
    if u.m == v.m {
        let d = (u.x - v.x).abs();
        d > 0 && d <= reach(u.m)
    } else {
        u.x == v.x && u.m.abs_diff(v.m) == 1
    }
}

/// Neighbors of `v` whose horizontal coordinate lies in `window`, sorted.
pub fn neighbors(v: HoroballVertex, window: Window) -> Result<Vec<HoroballVertex>> {
    if window.x_lo > window.x_hi {
        return Err(Error::EmptyWindow);
    }
    let r = reach(v.m);
    let lo = window.x_lo.max(v.x.saturating_sub(r));
    let hi = window.x_hi.min(v.x.saturating_add(r));
    let mut out = Vec::new();
    if v.m > 0 && (window.x_lo..=window.x_hi).contains(&v.x) {
        out.push(HoroballVertex::new(v.x, v.m - 1));
    }
    out.extend((lo..=hi).filter(|&y| y != v.x).map(|y| HoroballVertex::new(y, v.m)));
    if (window.x_lo..=window.x_hi).contains(&v.x) {
        out.push(HoroballVertex::new(v.x, v.m + 1));
    }
    out.sort();
    Ok(out)
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Length of the best path that climbs to one peak level, crosses, and descends.
pub fn dist_estimate(u: HoroballVertex, v: HoroballVertex) -> u64 {
    let dx = u.x.abs_diff(v.x);
    let base = u.m.max(v.m);
    if dx == 0 {
        return u.m.abs_diff(v.m) as u64;
    }
    let top = base.max(ceil_log2(dx)) + 1;
    (base..=top)
        .map(|p| {
            let climb = (p - u.m) as u64 + (p - v.m) as u64;
            climb + dx.div_ceil(reach(p) as u64)
        })
        .min()
        .unwrap_or(u64::MAX)
}

/// Window `(x_lo, x_hi, m_max)` inside which some geodesic from `u` to `v` lies.
pub fn sufficient_window(u: HoroballVertex, v: HoroballVertex) -> (i64, i64, u32) {
    let span = (u.x - v.x).abs();
    let m_max = u.m.max(v.m).max(ceil_log2(span as u64)) + 2;
    (u.x.min(v.x) - 2 * span, u.x.max(v.x) + 2 * span, m_max)
}

/// Default cap on the number of window vertices a breadth-first search may touch.
pub const DEFAULT_BFS_BUDGET: u64 = 1 << 27;

/// Exact graph distance by breadth-first search over a sufficient window.
pub fn dist_exact(u: HoroballVertex, v: HoroballVertex) -> Result<u64> {
    dist_exact_with_budget(u, v, DEFAULT_BFS_BUDGET)
}

pub fn dist_exact_with_budget(u: HoroballVertex, v: HoroballVertex, budget: u64) -> Result<u64> {
    let (lo, hi, m_max) = sufficient_window(u, v);
    let grid = WindowBfs::run(u, lo, hi, m_max, budget)?;
    Ok(grid.get(v).expect("target lies in its own sufficient window"))
}

/// Single-source distances over a rectangular window of the horoball.
///
/// Each level keeps a "next unvisited" forest so that a horizontal sweep of
/// width `2^(m+1)` touches only vertices that are still undiscovered.
#[derive(Debug, Clone)]
pub struct WindowBfs {
    x_lo: i64,
    width: usize,
    m_max: u32,
    dist: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

impl WindowBfs {
    pub fn run(src: HoroballVertex, x_lo: i64, x_hi: i64, m_max: u32, budget: u64) -> Result<Self> {
        if x_lo > x_hi {
            return Err(Error::EmptyWindow);
        }
        let width = (x_hi - x_lo + 1) as usize;
        let levels = m_max as usize + 1;
        let size = width as u64 * levels as u64;
        if size > budget {
            return Err(Error::Budget(format!("horoball window of {size} vertices")));
        }
        if src.x < x_lo || src.x > x_hi || src.m > m_max {
            return Err(Error::Precondition("source outside window".into()));
        }
        let mut dist = vec![UNSEEN; width * levels];
        // next[m][i] points at the smallest unvisited index >= i on level m.
        let mut next: Vec<Vec<u32>> = (0..levels).map(|_| (0..=width as u32).collect()).collect();
        fn find(next: &mut [u32], i: usize) -> usize {
            let mut r = i;
            while next[r] as usize != r {
                r = next[r] as usize;
            }
            let mut c = i;
            while next[c] as usize != r {
                let n = next[c] as usize;
                next[c] = r as u32;
                c = n;
            }
            r
        }
        let idx = |i: usize, m: usize| m * width + i;
        let mut queue = VecDeque::new();
        let si = (src.x - x_lo) as usize;
        let sm = src.m as usize;
        dist[idx(si, sm)] = 0;
        next[sm][si] = si as u32 + 1;
        queue.push_back((si, sm));
        while let Some((i, m)) = queue.pop_front() {
            let d = dist[idx(i, m)] + 1;
            for mm in [m.wrapping_sub(1), m + 1] {
                if mm < levels && dist[idx(i, mm)] == UNSEEN {
                    dist[idx(i, mm)] = d;
                    next[mm][i] = i as u32 + 1;
                    queue.push_back((i, mm));
                }
            }
            let r = reach(m as u32).min(width as i64) as usize;
            let lo = i.saturating_sub(r);
            let hi = (i + r).min(width - 1);
            let mut j = find(&mut next[m], lo);
            while j <= hi {
                dist[idx(j, m)] = d;
                next[m][j] = j as u32 + 1;
                queue.push_back((j, m));
                j = find(&mut next[m], j + 1);
            }
        }
        Ok(WindowBfs { x_lo, width, m_max, dist })
    }

    pub fn get(&self, v: HoroballVertex) -> Option<u64> {
        let i = v.x - self.x_lo;
        if i < 0 || i as usize >= self.width || v.m > self.m_max {
            return None;
        }
        let d = self.dist[v.m as usize * self.width + i as usize];
        (d != UNSEEN).then_some(d as u64)
    }
}

/// Exact distances from `(0, m_src)` to every `(dx, m)` with `0 <= dx <= max_dx`, `m <= max_m`.
///
/// The window is the union of the sufficient windows of all those pairs.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    pub m_src: u32,
    pub max_dx: i64,
    pub max_m: u32,
    bfs: WindowBfs,
}

impl DistanceTable {
    pub fn build(m_src: u32, max_dx: i64, max_m: u32) -> Result<Self> {
        let m_top = m_src.max(max_m).max(ceil_log2(max_dx.max(1) as u64)) + 2;
        let bfs = WindowBfs::run(HoroballVertex::new(0, m_src), -2 * max_dx, 3 * max_dx, m_top, DEFAULT_BFS_BUDGET)?;
        Ok(DistanceTable { m_src, max_dx, max_m, bfs })
    }

    /// Distance from `(0, m_src)` to `(dx, m)`, using reflection for negative `dx`.
    pub fn get(&self, dx: i64, m: u32) -> Option<u64> {
        if dx.abs() > self.max_dx || m > self.max_m {
            return None;
        }
        self.bfs.get(HoroballVertex::new(dx.abs(), m))
    }
}

/// Exact distances for many pairs, sharing one table per source level.
pub fn dist_exact_batch(pairs: &[(HoroballVertex, HoroballVertex)]) -> Result<Vec<u64>> {
    use rayon::prelude::*;
    let max_dx = pairs.iter().map(|(u, v)| (u.x - v.x).abs()).max().unwrap_or(0).max(1);
    let max_m = pairs.iter().map(|(u, v)| u.m.max(v.m)).max().unwrap_or(0);
    let tables: Vec<DistanceTable> =
        (0..=max_m).into_par_iter().map(|m| DistanceTable::build(m, max_dx, max_m)).collect::<Result<_>>()?;
    Ok(pairs.iter().map(|(u, v)| tables[u.m as usize].get(v.x - u.x, v.m).expect("pair inside batch window")).collect())
}

/// Hyperbolic distance between the images `(x, 2^m)` in the upper half-plane.
pub fn hyp_dist(u: HoroballVertex, v: HoroballVertex) -> f64 {
    let y1 = (u.m as f64).exp2();
    let y2 = (v.m as f64).exp2();
    let dx = (u.x - v.x) as f64;
    let dy = y1 - y2;
    (1.0 + (dx * dx + dy * dy) / (2.0 * y1 * y2)).acosh()
}

/// Result of comparing graph distance with hyperbolic distance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypFit {
    pub k_mult: f64,
    pub c_add: f64,
    pub pairs: usize,
    pub worst: Option<(HoroballVertex, HoroballVertex)>,
}

/// Fits `(K, C)` with `d_hyp/K - C <= d_exact ln 2 <= K d_hyp + C` over the sample.
pub fn hyp_compare(sample: &[(HoroballVertex, HoroballVertex)]) -> Result<HypFit> {
    if sample.is_empty() {
        return Err(Error::Degenerate("empty sample".into()));
    }
    let exact = dist_exact_batch(sample)?;
    let points: Vec<(f64, f64)> =
        sample.iter().zip(&exact).map(|(&(u, v), &d)| (d as f64 * std::f64::consts::LN_2, hyp_dist(u, v))).collect();
    let QiFit { k, c, worst } = fit_qi(&points);
    Ok(HypFit { k_mult: k, c_add: c, pairs: sample.len(), worst: worst.map(|i| sample[i]) })
}

/// Seeded pairs with `|x| <= max_x` and `m <= max_m`.
pub fn sample_pairs(seed: u64, n: usize, max_x: i64, max_m: u32) -> Vec<(HoroballVertex, HoroballVertex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertex = |rng: &mut ChaCha8Rng| HoroballVertex::new(rng.gen_range(-max_x..=max_x), rng.gen_range(0..=max_m));
    (0..n).map(|_| (vertex(&mut rng), vertex(&mut rng))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, m: u32) -> HoroballVertex {
        HoroballVertex::new(x, m)
    }

    const WIDE: Window = Window { x_lo: -1000, x_hi: 1000 };

    #[test]
    fn neighbor_examples() {
        assert_eq!(neighbors(v(0, 0), WIDE).unwrap(), vec![v(-1, 0), v(0, 1), v(1, 0)]);
        let mut want: Vec<_> = (-4..=4).filter(|&y| y != 0).map(|y| v(y, 2)).collect();
        want.extend([v(0, 1), v(0, 3)]);
        want.sort();
        assert_eq!(neighbors(v(0, 2), WIDE).unwrap(), want);
        let mut want = vec![v(3, 1), v(4, 1), v(6, 1), v(7, 1), v(5, 0), v(5, 2)];
        want.sort();
        assert_eq!(neighbors(v(5, 1), WIDE).unwrap(), want);
        assert_eq!(neighbors(v(0, 0), Window { x_lo: 1, x_hi: 0 }), Err(Error::EmptyWindow));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(dist_exact(v(0, 0), v(0, 5)).unwrap(), 5);
        assert_eq!(dist_exact(v(0, 0), v(1, 0)).unwrap(), 1);
        assert!(dist_exact(v(0, 0), v(8, 0)).unwrap() <= 6);
        assert_eq!(dist_estimate(v(0, 0), v(0, 5)), 5);
        assert_eq!(dist_estimate(v(3, 2), v(3, 2)), 0);
        for k in 1..=12u32 {
            let far = v(1 << k, 0);
            assert_eq!(dist_estimate(v(0, 0), far), 2 * k as u64);
            assert_eq!(dist_exact(v(0, 0), far).unwrap(), 2 * k as u64);
        }
    }

    #[test]
    fn vertical_rays_are_geodesic() {
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(dist_exact(v(7, a), v(7, b)).unwrap(), a.abs_diff(b) as u64);
            }
        }
    }

    #[test]
    fn metric_on_small_window() {
        let pts: Vec<_> = (-6..=6).flat_map(|x| (0..4).map(move |m| v(x, m))).collect();
        let lo = -40;
        let hi = 40;
        let table: Vec<WindowBfs> = pts.iter().map(|&p| WindowBfs::run(p, lo, hi, 8, 1 << 20).unwrap()).collect();
        for (i, a) in pts.iter().enumerate() {
            for (j, b) in pts.iter().enumerate() {
                let dab = table[i].get(*b).unwrap();
                assert_eq!(dab, table[j].get(*a).unwrap());
                assert_eq!(dab == 0, a == b);
                for c in &pts {
                    assert!(table[i].get(*c).unwrap() <= dab + table[j].get(*c).unwrap());
                }
            }
        }
    }

    #[test]
    fn level_zero_distance_is_monotone() {
        let t = DistanceTable::build(0, 1 << 12, 0).unwrap();
        let mut prev = 0;
        for dx in 0..=(1 << 12) {
            let d = t.get(dx, 0).unwrap();
            assert!(d >= prev);
            prev = d;
        }
    }

    #[test]
    fn window_sufficiency_against_wider_search() {
        for (a, b) in [(v(0, 0), v(37, 1)), (v(-5, 3), v(60, 0)), (v(2, 0), v(3, 4))] {
            let d = dist_exact(a, b).unwrap();
            let wide = WindowBfs::run(a, -600, 600, 12, 1 << 24).unwrap();
            assert_eq!(wide.get(b).unwrap(), d);
        }
    }

    #[test]
    fn hyperbolic_examples() {
        let f = hyp_compare(&[(v(0, 0), v(0, 1))]).unwrap();
        assert!((f.k_mult - 1.0).abs() < 1e-6 && f.c_add.abs() < 1e-6);
        let h = hyp_dist(v(0, 0), v(1, 0));
        assert!((h - 1.5f64.acosh()).abs() < 1e-12);
    }
}
