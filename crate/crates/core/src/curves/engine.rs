//! Exact curve arithmetic on `S_{0,4}` and `S_{0,5}`.
//!
//! Every curve is carried to a round curve by a word of half twists found
//! by weight descent. Intersection numbers, twists and projections are then
//! evaluated after moving the second curve to that standard position.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::chords::round_intersection;
use super::generators::{frozen, CompiledAction};
use super::triangulation::SphereTriangulation;
use super::word::{self, HalfTwist};
use super::CurveSystem;
use crate::error::{Error, Result};
use crate::surface::SurfaceKind;

/// Segment whose round curve is the standard position.
pub const STANDARD_SEGMENT: usize = 1;

/// Curve arithmetic for the sphere with `n + 1` punctures.
#[derive(Debug)]
pub struct SphereCurves {
    n: usize,
    tri: SphereTriangulation,
    actions: Vec<CompiledAction>,
    round: Vec<CurveSystem>,
    round_index: HashMap<CurveSystem, usize>,
    /// Word sending round curve `j` to the standard round curve.
    to_standard: Vec<Vec<HalfTwist>>,
    links: Vec<CurveSystem>,
    reductions: RwLock<HashMap<CurveSystem, Arc<[HalfTwist]>>>,
}

fn gen_slot(g: HalfTwist) -> usize {
    2 * (g.index as usize - 1) + usize::from(g.inverse)
}

impl SphereCurves {
    /// The shared engine for `S_{0,4}` or `S_{0,5}`.
    pub fn for_kind(kind: SurfaceKind) -> Result<&'static SphereCurves> {
        static S04: OnceLock<SphereCurves> = OnceLock::new();
        static S05: OnceLock<SphereCurves> = OnceLock::new();
        match kind {
            SurfaceKind::S04 => Ok(S04.get_or_init(|| SphereCurves::build(3))),
            SurfaceKind::S05 => Ok(S05.get_or_init(|| SphereCurves::build(4))),
            other => Err(Error::UnsupportedSurface { genus: other.genus, punctures: other.punctures }),
        }
    }

    fn build(n: usize) -> Self {
        let tri = SphereTriangulation::standard(n);
        let mut actions = vec![None; 2 * n];
        for (g, a) in frozen(n) {
            actions[gen_slot(g)] = Some(CompiledAction::compile(n, &a));
        }
        let actions: Vec<CompiledAction> = actions.into_iter().map(|a| a.expect("every generator frozen")).collect();
        let round: Vec<CurveSystem> = (0..=n)
            .map(|j| {
                let seq = word::crossing_sequence(&word::round_curve_word(n, j));
                CurveSystem::from_coords(word::coords_from_sequence(&tri, &seq))
            })
            .collect();
        let round_index = round.iter().cloned().enumerate().map(|(j, c)| (c, j)).collect();
        let links = (1..=n as u8 + 1)
            .map(|v| {
                let coords = (0..tri.edge_count())
                    .map(|e| {
                        let (a, b) = tri.ends(e);
                        i64::from(a == v) + i64::from(b == v)
                    })
                    .collect();
                CurveSystem::from_coords(coords)
            })
            .collect();
        let mut eng = SphereCurves {
            n,
            tri,
            actions,
            round,
            round_index,
            to_standard: Vec::new(),
            links,
            reductions: RwLock::new(HashMap::new()),
        };
        eng.to_standard = (0..=n).map(|j| eng.search_round_path(j)).collect();
        eng
    }

    /// Shortest word carrying round curve `j` to the standard one.
    fn search_round_path(&self, j: usize) -> Vec<HalfTwist> {
        let target = &self.round[STANDARD_SEGMENT];
        let mut seen: HashMap<CurveSystem, Vec<HalfTwist>> = HashMap::new();
        seen.insert(self.round[j].clone(), Vec::new());
        let mut frontier = vec![self.round[j].clone()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                let w = seen[c].clone();
                if c == target {
                    return w;
                }
                for g in HalfTwist::all(self.n) {
                    let y = self.apply(g, c);
                    if !seen.contains_key(&y) && y.weight() <= 4 * target.weight() {
                        let mut w2 = vec![g];
                        w2.extend(w.iter().copied());
                        seen.insert(y.clone(), w2);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        panic!("round curves are related by short words");
    }

    pub fn finite_punctures(&self) -> usize {
        self.n
    }

    pub fn surface(&self) -> SurfaceKind {
        if self.n == 3 {
            SurfaceKind::S04
        } else {
            SurfaceKind::S05
        }
    }

    pub fn triangulation(&self) -> &SphereTriangulation {
        &self.tri
    }

    /// Round curve enclosing the ends of segment `j`.
    pub fn round_curve(&self, j: usize) -> &CurveSystem {
        &self.round[j]
    }

    pub fn standard_curve(&self) -> &CurveSystem {
        &self.round[STANDARD_SEGMENT]
    }

    /// Image of a curve under one generator.
    pub fn apply(&self, g: HalfTwist, c: &CurveSystem) -> CurveSystem {
        CurveSystem::from_coords(self.actions[gen_slot(g)].apply(c.coords()))
    }

    /// Image under a word, leftmost generator acting last.
    pub fn apply_word(&self, w: &[HalfTwist], c: &CurveSystem) -> CurveSystem {
        let mut x = c.coords().to_vec();
        for &g in w.iter().rev() {
            x = self.actions[gen_slot(g)].apply(&x);
        }
        CurveSystem::from_coords(x)
    }

    /// Image of round curve `j` under a word.
    pub fn from_round(&self, j: usize, w: &[HalfTwist]) -> CurveSystem {
        self.apply_word(w, &self.round[j])
    }

    /// Checks that `c` is one essential, non-peripheral simple closed curve.
    pub fn validate(&self, c: &CurveSystem) -> Result<()> {
        self.tri.check_normal(c.coords())?;
        if c.weight() == 0 {
            return Err(Error::InvalidCurve("empty curve".into()));
        }
        if self.links.contains(c) {
            return Err(Error::InvalidCurve("peripheral curve".into()));
        }
        let comps = self.tri.trace(c.coords())?;
        if comps.len() != 1 {
            return Err(Error::InvalidCurve(format!("{} components", comps.len())));
        }
        self.reduction(c).map(|_| ())
    }

    /// A word `w` with `w(standard curve) = c`.
    pub fn reduction(&self, c: &CurveSystem) -> Result<Arc<[HalfTwist]>> {
        if let Some(w) = self.reductions.read().expect("lock").get(c) {
            return Ok(w.clone());
        }
        let w: Arc<[HalfTwist]> = self.descend(c)?.into();
        self.reductions.write().expect("lock").insert(c.clone(), w.clone());
        Ok(w)
    }

    /// Weight descent to a round curve; returns the word from the standard curve.
    fn descend(&self, c: &CurveSystem) -> Result<Vec<HalfTwist>> {
        self.tri.check_normal(c.coords())?;
        let gens = HalfTwist::all(self.n);
        let mut cur = c.clone();
        let mut applied: Vec<HalfTwist> = Vec::new();
        let limit = 64 + 8 * c.weight().max(1).ilog2() as usize * 64;
        for _ in 0..limit {
            if let Some(&j) = self.round_index.get(&cur) {
                // cur = applied(c), standard = to_standard[j](cur).
                let mut forward: Vec<HalfTwist> = self.to_standard[j].clone();
                forward.extend(applied.iter().rev().copied());
                // forward(c) = standard, so c = forward^-1(standard).
                return Ok(word::inverse_word(&forward));
            }
            let here = cur.weight();
            let step = gens
                .iter()
                .map(|&g| (self.apply(g, &cur), g))
                .min_by_key(|(x, g)| (x.weight(), *g))
                .filter(|(x, _)| x.weight() < here);
            if let Some((x, g)) = step {
                cur = x;
                applied.push(g);
                continue;
            }
            let (x, ws) = self
                .lookahead(&cur, 3)
                .ok_or_else(|| Error::InvalidCurve("weight descent stalled (not an essential curve?)".into()))?;
            cur = x;
            applied.extend(ws);
        }
        Err(Error::Budget("weight descent did not terminate".into()))
    }

    /// Up to `depth` generators that lower the weight or reach a round curve.
    fn lookahead(&self, c: &CurveSystem, depth: usize) -> Option<(CurveSystem, Vec<HalfTwist>)> {
        let gens = HalfTwist::all(self.n);
        let here = c.weight();
        let mut frontier = vec![(c.clone(), Vec::new())];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (x, ws) in &frontier {
                for &g in &gens {
                    if ws.last() == Some(&g.inv()) {
                        continue;
                    }
                    let y = self.apply(g, x);
                    let mut w2: Vec<HalfTwist> = ws.clone();
                    w2.push(g);
                    if y.weight() < here || self.round_index.contains_key(&y) {
                        return Some((y, w2));
                    }
                    next.push((y, w2));
                }
            }
            frontier = next;
        }
        None
    }

    /// Geometric intersection number.
    pub fn intersection(&self, a: &CurveSystem, b: &CurveSystem) -> Result<u64> {
        let w = self.reduction(b)?;
        let moved = self.apply_word(&word::inverse_word(&w), a);
        Ok(round_intersection(&self.tri, moved.coords(), STANDARD_SEGMENT))
    }

    /// `H_about^k(a)` for the half twist about a curve bounding two punctures.
    pub fn half_twist(&self, a: &CurveSystem, about: &CurveSystem, k: i64) -> Result<CurveSystem> {
        if k == 0 {
            return Ok(a.clone());
        }
        let w = self.reduction(about)?;
        let g = HalfTwist::new(STANDARD_SEGMENT as u8, k < 0);
        let mut full: Vec<HalfTwist> = w.to_vec();
        full.extend(std::iter::repeat_n(g, k.unsigned_abs() as usize));
        full.extend(word::inverse_word(&w));
        Ok(self.apply_word(&full, a))
    }

    /// `T_about^k(a)` for the Dehn twist.
    pub fn dehn_twist(&self, a: &CurveSystem, about: &CurveSystem, k: i64) -> Result<CurveSystem> {
        self.half_twist(a, about, 2 * k)
    }

    /// Cached reductions so far.
    pub fn cache_size(&self) -> usize {
        self.reductions.read().expect("lock").len()
    }
}
