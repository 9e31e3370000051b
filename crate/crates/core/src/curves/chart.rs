//! Farey coordinates on a four-holed sphere piece.
//!
//! In standard position the piece is the complement of the standard round
//! curve (or the whole surface when there are three finite punctures). Its
//! curves are `r_s = W_s(A)` where `A` is round curve `n - 1`, `B` is round
//! curve `n`, and `W_s` is a word in the half twists `H_A`, `H_B` acting on
//! slopes as `[[1,1],[0,1]]` and `[[1,0],[eps,1]]`. Then `i(r_s, r_t) =
//! 2 |det(s, t)|`, `A` has slope `1/0` and `B` has slope `0/1`.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::chords::round_intersection;
use super::engine::SphereCurves;
use super::word::{inverse_word, HalfTwist};
use super::CurveSystem;
use crate::error::{Error, Result};
use crate::farey::{self, Slope};
use crate::surface::SurfaceKind;

type Vec2 = (i64, i64);

/// Farey chart of the standard piece.
#[derive(Debug)]
pub struct FareyChart {
    eng: &'static SphereCurves,
    eps: i64,
}

impl FareyChart {
    pub fn for_kind(kind: SurfaceKind) -> Result<&'static FareyChart> {
        static S04: OnceLock<FareyChart> = OnceLock::new();
        static S05: OnceLock<FareyChart> = OnceLock::new();
        let cell = match kind {
            SurfaceKind::S04 => &S04,
            SurfaceKind::S05 => &S05,
            other => return Err(Error::UnsupportedSurface { genus: other.genus, punctures: other.punctures }),
        };
        let eng = SphereCurves::for_kind(kind)?;
        Ok(cell.get_or_init(|| FareyChart::calibrate(eng)))
    }

    /// Picks the sign of `H_B` so that intersection numbers match `2 |det|`.
    fn calibrate(eng: &'static SphereCurves) -> Self {
        let probes = [(1, 1), (1, -1), (2, 1), (1, 2), (-2, 1), (3, 2)];
        for eps in [1, -1] {
            let chart = FareyChart { eng, eps };
            let ok = probes.iter().all(|&a| {
                probes.iter().all(|&b| {
                    let (sa, sb) = (Slope::from_vec(a), Slope::from_vec(b));
                    let i = eng.intersection(&chart.curve(sa), &chart.curve(sb)).expect("chart curves are essential");
                    i == 2 * farey::det(sa, sb).unsigned_abs()
                })
            });
            if ok {
                return chart;
            }
        }
        panic!("no consistent chart orientation");
    }

    pub fn engine(&self) -> &'static SphereCurves {
        self.eng
    }

    fn gen_a(&self) -> usize {
        self.eng.finite_punctures() - 1
    }

    fn gen_b(&self) -> usize {
        self.eng.finite_punctures()
    }

    /// A word `W` with `W(A) = r_s`.
    pub fn slope_word(&self, s: Slope) -> Vec<HalfTwist> {
        let (mut p, mut q) = s.vec();
        // Steps (generator index, power) applied to the vector, first to last.
        let mut steps: Vec<(usize, i64)> = Vec::new();
        while q != 0 {
            if p.abs() > q.abs() || p == 0 {
                let k = if p == 0 { -1 } else { p / q };
                p -= k * q;
                steps.push((self.gen_a(), -k));
            } else {
                let k = q / p;
                q -= k * p;
                steps.push((self.gen_b(), -self.eps * k));
            }
        }
        let mut w = Vec::new();
        for &(g, k) in &steps {
            let h = HalfTwist::new(g as u8, k > 0);
            w.extend(std::iter::repeat_n(h, k.unsigned_abs() as usize));
        }
        w
    }

    /// The curve of slope `s` in standard position.
    pub fn curve(&self, s: Slope) -> CurveSystem {
        self.eng.from_round(self.gen_a(), &self.slope_word(s))
    }

    /// `i(x, r_s)` for `x` in standard position.
    pub fn weight(&self, x: &CurveSystem, s: Slope) -> u64 {
        let moved = self.eng.apply_word(&inverse_word(&self.slope_word(s)), x);
        round_intersection(self.eng.triangulation(), moved.coords(), self.gen_a())
    }

    /// Slope of a curve of the piece in standard position.
    pub fn slope_of(&self, z: &CurveSystem) -> Result<Slope> {
        let support = self.support(z)?;
        match support.as_slice() {
            [s] if self.weight(z, *s) == 0 => Ok(*s),
            _ => Err(Error::InvalidCurve("curve is not contained in the piece".into())),
        }
    }

    /// Projection of `x` (in standard position) to the Farey graph of the
    /// piece: the vertex, edge or triangle of slopes disjoint from the arcs
    /// of `x` in the piece. Empty when `x` misses the piece.
    pub fn support(&self, x: &CurveSystem) -> Result<Vec<Slope>> {
        let mut f = Seminorm { chart: self, x, memo: HashMap::new() };
        let (mut u, mut v) = ((1, 0), (0, 1));
        if f.at(u) == 0 && f.at(v) == 0 {
            return Ok(Vec::new());
        }
        if f.at(u) > f.at(v) {
            std::mem::swap(&mut u, &mut v);
        }
        if f.at(u) == 0 {
            return Ok(vec![Slope::from_vec(u)]);
        }
        // Lagrange reduction for the norm.
        loop {
            let k = f.argmin_line(v, u);
            let w = add(v, scale(u, k));
            if f.at(w) < f.at(u) {
                v = u;
                u = w;
                if f.at(u) == 0 {
                    return Ok(vec![Slope::from_vec(u)]);
                }
            } else {
                v = w;
                break;
            }
        }
        for sign in [1, -1] {
            let tri = [u, v, add(u, scale(v, sign))];
            if let Some(m) = f.fit_triangle(&tri) {
                let mut out: Vec<Slope> =
                    tri.iter().zip(m).filter(|(_, mk)| *mk > 0).map(|(t, _)| Slope::from_vec(*t)).collect();
                out.sort();
                return Ok(out);
            }
        }
        Err(Error::Degenerate("arc weights do not fit a Farey triangle".into()))
    }
}

fn add(a: Vec2, b: Vec2) -> Vec2 {
    (a.0 + b.0, a.1 + b.1)
}

fn scale(a: Vec2, k: i64) -> Vec2 {
    (a.0 * k, a.1 * k)
}

fn det2(a: Vec2, b: Vec2) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// `v -> i(x, v)` extended to all integer vectors by homogeneity.
struct Seminorm<'a> {
    chart: &'a FareyChart,
    x: &'a CurveSystem,
    memo: HashMap<Slope, i64>,
}

impl Seminorm<'_> {
    fn at(&mut self, v: Vec2) -> i64 {
        if v == (0, 0) {
            return 0;
        }
        let g = farey::gcd(v.0, v.1);
        let s = Slope::from_vec(v);
        let (chart, x) = (self.chart, self.x);
        let base = *self.memo.entry(s).or_insert_with(|| chart.weight(x, s) as i64);
        g * base
    }

    /// Integer `k` minimising the convex function `k -> at(v + k u)`.
    fn argmin_line(&mut self, v: Vec2, u: Vec2) -> i64 {
        let dir = if self.at(add(v, u)) < self.at(v) {
            1
        } else if self.at(add(v, scale(u, -1))) < self.at(v) {
            -1
        } else {
            return 0;
        };
        let mut g = |k: i64| self.at(add(v, scale(u, dir * k)));
        // Smallest k >= 0 with g(k + 1) >= g(k), bracketed by doubling.
        let mut hi = 1i64;
        while g(hi + 1) < g(hi) {
            hi *= 2;
        }
        let mut lo = 0i64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if g(mid + 1) >= g(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        dir * lo
    }

    /// Weights `m` with `at(t) = sum m_k |det(tri_k, t)|`, verified off the triangle.
    fn fit_triangle(&mut self, tri: &[Vec2; 3]) -> Option<[i64; 3]> {
        let f: Vec<i64> = tri.iter().map(|&t| self.at(t)).collect();
        let total = f[0] + f[1] + f[2];
        if total % 2 != 0 {
            return None;
        }
        let m = [total / 2 - f[0], total / 2 - f[1], total / 2 - f[2]];
        if m.iter().any(|&mk| mk < 0) {
            return None;
        }
        let [a, b, c] = *tri;
        let checks =
            [add(a, b), add(b, c), add(a, c), (a.0 - b.0, a.1 - b.1), add(scale(a, 2), b), add(a, scale(b, 2))];
        checks
            .iter()
            .all(|&t| {
                let model: i64 = tri.iter().zip(m).map(|(&s, mk)| mk * det2(s, t).abs()).sum();
                self.at(t) == model
            })
            .then_some(m)
    }
}
