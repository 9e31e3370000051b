//! The standard ideal triangulation of a punctured sphere and edge flips.
//!
//! Finite punctures `1..=n` lie on the real line; puncture `n + 1` is the
//! point at infinity. Edges are the line segments `s_0..s_n`, followed by
//! upper rays `u_2..u_{n-1}` and lower rays `l_2..l_{n-1}` joining a finite
//! puncture to infinity. Each half-plane is fanned from infinity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An edge traversed in its stored direction (`rev = false`) or against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: u16,
    pub rev: bool,
}

impl HalfEdge {
    const fn fwd(edge: usize) -> Self {
        HalfEdge { edge: edge as u16, rev: false }
    }

    const fn bwd(edge: usize) -> Self {
        HalfEdge { edge: edge as u16, rev: true }
    }

    pub fn flipped(self) -> Self {
        HalfEdge { edge: self.edge, rev: !self.rev }
    }
}

/// Edges touched by one flip: the flipped edge and the quadrilateral sides
/// `a, b, c, d` in counterclockwise order, so that `a, c` and `b, d` are opposite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipStep {
    pub edge: u16,
    pub a: u16,
    pub b: u16,
    pub c: u16,
    pub d: u16,
}

impl FlipStep {
    /// New weight of the flipped edge.
    pub fn apply(&self, w: &mut [i64]) {
        let (e, a, b, c, d) = (self.edge as usize, self.a as usize, self.b as usize, self.c as usize, self.d as usize);
        w[e] = (w[a] + w[c]).max(w[b] + w[d]) - w[e];
    }
}

/// A triangulation of the sphere with `n + 1` punctures.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphereTriangulation {
    n: usize,
    /// Counterclockwise triples of half-edges.
    triangles: Vec<[HalfEdge; 3]>,
    /// Tail and head puncture of every edge.
    ends: Vec<(u8, u8)>,
}

impl SphereTriangulation {
    /// The standard triangulation with `n >= 3` finite punctures.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 3, "need at least four punctures");
        let inf = (n + 1) as u8;
        let edges = 3 * n - 3;
        let mut ends = vec![(0u8, 0u8); edges];
        ends[0] = (inf, 1);
        for (k, e) in ends.iter_mut().enumerate().take(n).skip(1) {
            *e = (k as u8, k as u8 + 1);
        }
        ends[n] = (n as u8, inf);
        let mut t = SphereTriangulation { n, triangles: Vec::new(), ends };
        for j in 2..n {
            let (up, down) = (t.ray(j, true), t.ray(j, false));
            t.ends[up] = (j as u8, inf);
            t.ends[down] = (j as u8, inf);
        }
        for k in 1..n {
            let right_up = if k + 1 < n { HalfEdge::fwd(t.ray(k + 1, true)) } else { HalfEdge::fwd(n) };
            let left_up = if k >= 2 { HalfEdge::bwd(t.ray(k, true)) } else { HalfEdge::fwd(0) };
            t.triangles.push([HalfEdge::fwd(k), right_up, left_up]);
            let down_left = if k >= 2 { HalfEdge::fwd(t.ray(k, false)) } else { HalfEdge::bwd(0) };
            let up_right = if k + 1 < n { HalfEdge::bwd(t.ray(k + 1, false)) } else { HalfEdge::bwd(n) };
            t.triangles.push([HalfEdge::bwd(k), down_left, up_right]);
        }
        t
    }

    pub fn finite_punctures(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn triangles(&self) -> &[[HalfEdge; 3]] {
        &self.triangles
    }

    /// Index of the ray at finite puncture `j` in `2..n`, upper or lower.
    pub fn ray(&self, j: usize, upper: bool) -> usize {
        debug_assert!((2..self.n).contains(&j));
        let base = self.n + 1 + if upper { 0 } else { self.n - 2 };
        base + j - 2
    }

    /// Tail and head punctures of an edge.
    pub fn ends(&self, e: usize) -> (u8, u8) {
        self.ends[e]
    }

    fn tail(&self, h: HalfEdge) -> u8 {
        let (t, hd) = self.ends[h.edge as usize];
        if h.rev {
            hd
        } else {
            t
        }
    }

    fn locate(&self, h: HalfEdge) -> Option<(usize, usize)> {
        self.triangles.iter().enumerate().find_map(|(ti, tri)| tri.iter().position(|&x| x == h).map(|k| (ti, k)))
    }

    /// Whether the two sides of `e` lie in distinct triangles.
    pub fn is_flippable(&self, e: usize) -> bool {
        match (self.locate(HalfEdge::fwd(e)), self.locate(HalfEdge::bwd(e))) {
            (Some((t1, _)), Some((t2, _))) => t1 != t2,
            _ => false,
        }
    }

    /// Replaces edge `e` by the other diagonal of its quadrilateral.
    pub fn flip(&mut self, e: usize) -> Result<FlipStep> {
        let (t1, k1) = self.locate(HalfEdge::fwd(e)).ok_or_else(|| Error::InvalidCurve("missing edge".into()))?;
        let (t2, k2) = self.locate(HalfEdge::bwd(e)).ok_or_else(|| Error::InvalidCurve("missing edge".into()))?;
        if t1 == t2 {
            return Err(Error::Degenerate(format!("edge {e} is folded")));
        }
        let r1 = self.triangles[t1];
        let r2 = self.triangles[t2];
        let (a, b) = (r1[(k1 + 1) % 3], r1[(k1 + 2) % 3]);
        let (c, d) = (r2[(k2 + 1) % 3], r2[(k2 + 2) % 3]);
        // e runs P -> Q; a: Q -> R, b: R -> P, c: P -> S, d: S -> Q. New edge S -> R.
        let s_v = self.tail(d);
        let r_v = self.tail(b);
        self.ends[e] = (s_v, r_v);
        self.triangles[t1] = [b, c, HalfEdge::fwd(e)];
        self.triangles[t2] = [d, a, HalfEdge::bwd(e)];
        Ok(FlipStep { edge: e as u16, a: a.edge, b: b.edge, c: c.edge, d: d.edge })
    }

    /// Corner counts of each triangle: entry `k` counts arcs turning at the
    /// vertex between sides `k` and `k + 1`.
    pub fn corner_counts(&self, w: &[i64]) -> Vec<[i64; 3]> {
        self.triangles
            .iter()
            .map(|t| {
                let x = [w[t[0].edge as usize], w[t[1].edge as usize], w[t[2].edge as usize]];
                [(x[0] + x[1] - x[2]) / 2, (x[1] + x[2] - x[0]) / 2, (x[2] + x[0] - x[1]) / 2]
            })
            .collect()
    }

    /// Checks nonnegativity, parity and triangle inequalities.
    pub fn check_normal(&self, w: &[i64]) -> Result<()> {
        if w.len() != self.edge_count() {
            return Err(Error::InvalidCurve(format!("expected {} coordinates", self.edge_count())));
        }
        if w.iter().any(|&x| x < 0) {
            return Err(Error::InvalidCurve("negative coordinate".into()));
        }
        for t in &self.triangles {
            let x = [w[t[0].edge as usize], w[t[1].edge as usize], w[t[2].edge as usize]];
            if (x[0] + x[1] + x[2]) % 2 != 0 {
                return Err(Error::InvalidCurve("odd triangle".into()));
            }
            if x[0] > x[1] + x[2] || x[1] > x[0] + x[2] || x[2] > x[0] + x[1] {
                return Err(Error::InvalidCurve("triangle inequality".into()));
            }
        }
        Ok(())
    }

    /// Lays out the strands of a normal multicurve and follows them.
    ///
    /// Points on each edge are numbered from its tail. Returns every component
    /// as its cyclic list of `(edge, position)` crossings. Intended as a slow
    /// oracle; the work is linear in the total weight.
    pub fn trace(&self, w: &[i64]) -> Result<Vec<Vec<(u16, i64)>>> {
        self.check_normal(w)?;
        let corners = self.corner_counts(w);
        let offset: Vec<usize> = w
            .iter()
            .scan(0usize, |acc, &x| {
                let o = *acc;
                *acc += x as usize;
                Some(o)
            })
            .collect();
        let total: usize = w.iter().map(|&x| x as usize).sum();
        // partner[side][point]: side 0 is the triangle holding the forward half-edge.
        let mut partner = vec![[usize::MAX; 2]; total];
        let pos_on = |h: HalfEdge, from_start: i64| -> usize {
            let e = h.edge as usize;
            let p = if h.rev { w[e] - 1 - from_start } else { from_start };
            offset[e] + p as usize
        };
        for (t, c) in self.triangles.iter().zip(&corners) {
            for k in 0..3 {
                let h = t[k];
                let g = t[(k + 1) % 3];
                // Arcs at the vertex shared by the end of h and the start of g.
                for depth in 0..c[k] {
                    let p = pos_on(h, w[h.edge as usize] - 1 - depth);
                    let q = pos_on(g, depth);
                    partner[p][usize::from(h.rev)] = q;
                    partner[q][usize::from(g.rev)] = p;
                }
            }
        }
        let point_edge = |p: usize| -> (u16, i64) {
            let e = offset.partition_point(|&o| o <= p) - 1;
            // Skip empty edges that share an offset.
            let e = (0..=e).rev().find(|&k| offset[k] <= p && p < offset[k] + w[k] as usize).unwrap_or(e);
            (e as u16, (p - offset[e]) as i64)
        };
        let mut seen = vec![false; total];
        let mut comps = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let (mut cur, mut side) = (start, 0usize);
            loop {
                seen[cur] = true;
                comp.push(point_edge(cur));
                let next = partner[cur][side];
                if next == usize::MAX {
                    return Err(Error::InvalidCurve("dangling strand".into()));
                }
                // Arrive at `next` from the side we left through; exit through the other.
                let arrived = if partner[next][0] == cur { 0 } else { 1 };
                side = 1 - arrived;
                cur = next;
                if cur == start {
                    break;
                }
            }
            comps.push(comp);
        }
        Ok(comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_shape() {
        for n in [3usize, 4, 5] {
            let t = SphereTriangulation::standard(n);
            assert_eq!(t.edge_count(), 3 * n - 3);
            assert_eq!(t.triangles().len(), 2 * n - 2);
            // Euler characteristic of the punctured sphere: V - E + F with V = n + 1.
            let chi = (n as i64 + 1) - t.edge_count() as i64 + t.triangles().len() as i64;
            assert_eq!(chi, 2);
            let mut seen = vec![[false; 2]; t.edge_count()];
            for tri in t.triangles() {
                for h in tri {
                    let slot = &mut seen[h.edge as usize][usize::from(h.rev)];
                    assert!(!*slot);
                    *slot = true;
                }
            }
            assert!(seen.iter().all(|s| s[0] && s[1]));
        }
    }

    #[test]
    fn triangles_close_up() {
        let t = SphereTriangulation::standard(4);
        for tri in t.triangles() {
            for k in 0..3 {
                let h = tri[k];
                let g = tri[(k + 1) % 3];
                let head = t.tail(h.flipped());
                assert_eq!(head, t.tail(g));
            }
        }
    }

    #[test]
    fn double_flip_restores() {
        let mut t = SphereTriangulation::standard(4);
        let orig = t.clone();
        for e in 0..t.edge_count() {
            if t.is_flippable(e) {
                t.flip(e).unwrap();
                t.flip(e).unwrap();
                let mut a = t.triangles.clone();
                let mut b = orig.triangles.clone();
                for x in a.iter_mut().chain(b.iter_mut()) {
                    for h in x.iter_mut() {
                        h.rev = false;
                    }
                    let m = (0..3).min_by_key(|&k| x[k]).unwrap();
                    x.rotate_left(m);
                }
                a.sort();
                b.sort();
                assert_eq!(a, b);
                let (x, y) = t.ends[e];
                assert!(orig.ends[e] == (x, y) || orig.ends[e] == (y, x));
            }
        }
    }
}
