//! Slopes, the Farey graph, and twisting about a slope.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced fraction `p/q` with `q >= 0`; infinity is `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Slope {
    p: i64,
    q: i64,
}

pub const INFINITY: Slope = Slope { p: 1, q: 0 };
pub const ZERO: Slope = Slope { p: 0, q: 1 };

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns `(g, x, y)` with `a x + b y = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl Slope {
    /// Normalizes sign and common factors; rejects `0/0`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidSlope(p, q));
        }
        let g = gcd(p, q);
        let (p, q) = (p / g, q / g);
        Ok(if q < 0 || (q == 0 && p < 0) { Slope { p: -p, q: -q } } else { Slope { p, q } })
    }

    /// Slope of an integer vector, up to sign; panics on the zero vector.
    pub fn from_vec(v: (i64, i64)) -> Self {
        Slope::new(v.0, v.1).expect("nonzero vector")
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn vec(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    /// Height `max(|p|, q)`.
    pub fn height(&self) -> i64 {
        self.p.abs().max(self.q)
    }
}

impl TryFrom<(i64, i64)> for Slope {
    type Error = Error;
    fn try_from(v: (i64, i64)) -> Result<Self> {
        Slope::new(v.0, v.1)
    }
}

impl From<Slope> for (i64, i64) {
    fn from(s: Slope) -> Self {
        (s.p, s.q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(INFINITY);
        }
        let bad = || Error::SlopeSyntax(s.to_string());
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (t.parse().map_err(|_| bad())?, 1),
        };
        Slope::new(p, q)
    }
}

/// `det(a, b) = a.p b.q - a.q b.p`.
pub fn det(a: Slope, b: Slope) -> i64 {
    a.p * b.q - a.q * b.p
}

/// Whether two distinct slopes span a Farey edge.
pub fn is_edge(a: Slope, b: Slope) -> Result<bool> {
    if a == b {
        return Err(Error::Degenerate(format!("is_edge({a}, {a})")));
    }
    Ok(det(a, b).abs() == 1)
}

/// An integral unimodular matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unimodular {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Degenerate("determinant is not 1".into()));
        }
        Ok(Unimodular { a, b, c, d })
    }

    pub fn apply_vec(&self, v: (i64, i64)) -> (i64, i64) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }

    pub fn apply(&self, s: Slope) -> Slope {
        Slope::from_vec(self.apply_vec(s.vec()))
    }

    pub fn mul(&self, o: &Unimodular) -> Unimodular {
        Unimodular {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Unimodular {
        Unimodular { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// A matrix sending `s` to infinity.
    pub fn to_infinity(s: Slope) -> Unimodular {
        // Pick (r, t) with p t - q r = 1; then [[t, -r], [-q, p]] maps (p, q) to (1, 0).
        let (_, x, y) = ext_gcd(s.p, s.q);
        // p x + q y = 1, so r = -y, t = x.
        Unimodular { a: x, b: y, c: -s.q, d: s.p }
    }

    /// Twist about `s`: `v -> v + det(s, v) s`, a shift by one fixing `s`.
    pub fn twist(s: Slope) -> Unimodular {
        let (p, q) = s.vec();
        Unimodular { a: 1 - p * q, b: p * p, c: -q * q, d: 1 + p * q }
    }

    pub fn pow(&self, k: i64) -> Unimodular {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut acc = Unimodular::IDENTITY;
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

/// Applies `T_alpha^k`.
pub fn twist_power(alpha: Slope, gamma: Slope, k: i64) -> Slope {
    let (p, q) = alpha.vec();
    let d = det(alpha, gamma);
    Slope::from_vec((gamma.p + k * d * p, gamma.q + k * d * q))
}

/// Regular continued fraction of `p/q` with `q >= 1`: `[a0; a1, ..., an]`.
pub fn continued_fraction(s: Slope) -> Vec<i64> {
    let (mut p, mut q) = s.vec();
    let mut out = Vec::new();
    while q != 0 {
        let a = p.div_euclid(q);
        out.push(a);
        (p, q) = (q, p - a * q);
    }
    out
}

/// Distance from infinity to `x` and one geodesic realizing it.
///
/// Walks the convergents of `x`; between consecutive convergents the Farey
/// ancestors form a fan around a pivot, and the pair (previous convergent,
/// pivot) separates the fan from everything before it.
fn geodesic_from_infinity(x: Slope) -> (u64, Vec<Slope>) {
    if x.is_infinity() {
        return (0, vec![INFINITY]);
    }
    let cf = continued_fraction(x);
    let mut prev = ((1i64, 0i64), 0u64, vec![INFINITY]);
    let c0 = (cf[0], 1i64);
    let mut pivot = (c0, 1u64, vec![INFINITY, Slope::from_vec(c0)]);
    for &a in &cf[1..] {
        let (pv, dp, path_p) = (pivot.0, pivot.1, &pivot.2);
        let (cv, d0, path_c) = (prev.0, prev.1, &prev.2);
        let next_v = (cv.0 + a * pv.0, cv.1 + a * pv.1);
        let next_s = Slope::from_vec(next_v);
        let along = d0 + a as u64;
        let (dn, path_n) = if along < dp + 1 {
            let mut p = path_c.clone();
            p.extend((1..=a).map(|j| Slope::from_vec((cv.0 + j * pv.0, cv.1 + j * pv.1))));
            (along, p)
        } else {
            let mut p = path_p.clone();
            p.push(next_s);
            (dp + 1, p)
        };
        prev = pivot;
        pivot = (next_v, dn, path_n);
    }
    (pivot.1, pivot.2)
}

/// Exact Farey distance.
pub fn cc_dist(a: Slope, b: Slope) -> u64 {
    let m = Unimodular::to_infinity(a);
    geodesic_from_infinity(m.apply(b)).0
}

/// One geodesic from `a` to `b`, endpoints included.
pub fn geodesic(a: Slope, b: Slope) -> Vec<Slope> {
    let m = Unimodular::to_infinity(a);
    let back = m.inverse();
    geodesic_from_infinity(m.apply(b)).1.into_iter().map(|s| back.apply(s)).collect()
}

/// Farey neighbors of `s` whose coordinates stay within `height`.
pub fn neighbors_within(s: Slope, height: i64) -> Vec<Slope> {
    let m = Unimodular::to_infinity(s).inverse();
    // Neighbors of s are (a n + b)/(c n + d) for integers n; keep |a n + b| <= h and |c n + d| <= h.
    let (mut lo, mut hi) = (i64::MIN / 4, i64::MAX / 4);
    for (u, v) in [(m.a, m.b), (m.c, m.d)] {
        if u == 0 {
            if v.abs() > height {
                return Vec::new();
            }
        } else {
            let (a, b) = ((-height - v), (height - v));
            let (a, b) = if u > 0 { (a, b) } else { (-b, -a) };
            let u = u.abs();
            lo = lo.max(a.div_euclid(u) + i64::from(a.rem_euclid(u) != 0));
            hi = hi.min(b.div_euclid(u));
        }
    }
    let mut out: Vec<Slope> = (lo..=hi).map(|n| m.apply(Slope { p: n, q: 1 })).collect();
    out.sort();
    out.dedup();
    out
}

/// Breadth-first search distance among slopes of height at most `height`.
pub fn cc_dist_bfs(a: Slope, b: Slope, height: i64) -> Result<u64> {
    if a.height() > height || b.height() > height {
        return Err(Error::Budget(format!("slopes exceed height {height}")));
    }
    let mut dist = HashMap::from([(a, 0u64)]);
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if v == b {
            return Ok(d);
        }
        for w in neighbors_within(v, height) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    Err(Error::Budget("target not reached inside height box".into()))
}

/// Twisting of `gamma` about `alpha` relative to `beta_ref`.
pub fn twist_coordinate(alpha: Slope, gamma: Slope, beta_ref: Slope) -> Result<i64> {
    if gamma == alpha || beta_ref == alpha {
        return Err(Error::EmptyProjection);
    }
    let m = Unimodular::to_infinity(alpha);
    let floor = |s: Slope| {
        let (p, q) = m.apply_vec(s.vec());
        // q != 0 because s != alpha.
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        p.div_euclid(q)
    };
    Ok(floor(gamma) - floor(beta_ref))
}

/// The Farey neighbor of `alpha` with twist `k` relative to `beta_ref`.
pub fn neighbor_with_twist(alpha: Slope, beta_ref: Slope, k: i64) -> Slope {
    let m = Unimodular::to_infinity(alpha);
    let b = m.apply(beta_ref);
    let base = b.p.div_euclid(b.q);
    m.inverse().apply(Slope { p: base + k, q: 1 })
}

/// Deterministic reference neighbor of `alpha`: its Farey parent of smaller
/// denominator (ties to the smaller numerator), infinity for integers, and
/// zero for infinity.
pub fn reference_neighbor(alpha: Slope) -> Slope {
    if alpha.is_infinity() {
        return ZERO;
    }
    if alpha.q == 1 {
        return INFINITY;
    }
    let (_, x, y) = ext_gcd(alpha.p, alpha.q);
    // alpha.p * x + alpha.q * y = 1, so (-y, x) is a neighbor.
    let base = Slope::from_vec((-y, x));
    let s0 = base.q.rem_euclid(alpha.q);
    let cands = [
        Slope::from_vec((base.p - (base.q - s0) / alpha.q * alpha.p, s0)),
        Slope::from_vec((alpha.p - (base.p - (base.q - s0) / alpha.q * alpha.p), alpha.q - s0)),
    ];
    *cands.iter().filter(|c| det(**c, alpha).abs() == 1).min_by_key(|c| (c.q, c.p)).expect("a parent exists")
}

/// Intersection-number model of annular distance about `alpha`:
/// `1 + floor(i(g1, g2) / (i(alpha, g1) i(alpha, g2)))` for distinct slopes.
pub fn annular_model_dist(alpha: Slope, g1: Slope, g2: Slope) -> Result<i64> {
    if g1 == alpha || g2 == alpha {
        return Err(Error::EmptyProjection);
    }
    if g1 == g2 {
        return Ok(0);
    }
    let i12 = det(g1, g2).abs();
    let den = det(alpha, g1).abs() * det(alpha, g2).abs();
    Ok(1 + i12 / den)
}
