//! Clean augmented markings, elementary moves and projections.
//!
//! A marking pairs each curve of a pants decomposition with a clean
//! transversal; an augmented marking adds a depth `D >= 0` per base curve.
//! Pairs are kept sorted by base curve, which makes the derived ordering
//! and hashing canonical.

pub mod ball;
pub mod farey_model;
pub mod project;
pub mod sphere_model;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{Subsurface, SurfaceKind};

pub use ball::{BallGraph, Caps};
pub use farey_model::FareyModel;
pub use project::{AnnularPoint, Projected};
pub use sphere_model::SphereModel;

/// Curve arithmetic a marking graph needs from its surface.
pub trait SurfaceModel: Send + Sync {
    type Curve: Clone + Eq + Hash + Ord + Debug + Serialize + DeserializeOwned + Send + Sync;

    fn kind(&self) -> SurfaceKind;

    fn validate_curve(&self, c: &Self::Curve) -> Result<()>;

    fn intersection(&self, a: &Self::Curve, b: &Self::Curve) -> Result<u64>;

    /// Intersection number of a base curve with a clean transversal.
    fn transverse_intersection(&self) -> u64;

    /// Power of the twist generator about `about` (a half twist on spheres).
    fn twist(&self, c: &Self::Curve, about: &Self::Curve, n: i64) -> Result<Self::Curve>;

    /// Annular coordinate of `x` about `core`, shifted by one per generator.
    fn annular_twist(&self, core: &Self::Curve, x: &Self::Curve) -> Result<i64>;

    /// The clean transversal of `base[i]` whose annular coordinate is `twist`.
    fn transversal_with_twist(&self, base: &[Self::Curve], i: usize, twist: i64) -> Result<Self::Curve>;

    /// Proper and whole subsurfaces whose boundary lies in `base`, with
    /// pants omitted: the whole surface, annuli, then pieces.
    fn domains(&self, base: &[Self::Curve]) -> Vec<Subsurface<Self::Curve>>;

    /// Diameter in `C(y)` of the union of the projections of `curves`, for
    /// non-annular `y`.
    fn curve_complex_diam(&self, y: &Subsurface<Self::Curve>, curves: &[Self::Curve]) -> Result<u64>;

    /// Whether `z` projects nontrivially to the non-annular `y`.
    fn meets(&self, z: &Self::Curve, y: &Subsurface<Self::Curve>) -> Result<bool>;

    /// Non-pants components of the complement of a multicurve.
    fn complement_pieces(&self, delta: &[Self::Curve]) -> Vec<Subsurface<Self::Curve>>;

    /// Marking induced on a proper non-annular piece, in its slope model.
    fn project_piece(
        &self,
        m: &AugmentedMarking<Self::Curve>,
        y: &Subsurface<Self::Curve>,
    ) -> Result<AugmentedMarking<crate::farey::Slope>>;
}

/// One base curve with its transversal and depth.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedCurve<C> {
    pub base: C,
    pub transversal: C,
    pub depth: u32,
}

/// A clean augmented marking in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(bound(deserialize = "C: Ord + DeserializeOwned"))]
#[serde(try_from = "Vec<MarkedCurve<C>>", into = "Vec<MarkedCurve<C>>")]
pub struct AugmentedMarking<C: Clone> {
    pairs: Vec<MarkedCurve<C>>,
}

impl<C: Ord + Clone> TryFrom<Vec<MarkedCurve<C>>> for AugmentedMarking<C> {
    type Error = Error;

    fn try_from(pairs: Vec<MarkedCurve<C>>) -> Result<Self> {
        AugmentedMarking::from_pairs(pairs)
    }
}

impl<C: Clone> From<AugmentedMarking<C>> for Vec<MarkedCurve<C>> {
    fn from(m: AugmentedMarking<C>) -> Self {
        m.pairs
    }
}

impl<C: Ord + Clone> AugmentedMarking<C> {
    /// Sorts pairs by base curve; rejects repeated base curves.
    pub fn from_pairs(mut pairs: Vec<MarkedCurve<C>>) -> Result<Self> {
        pairs.sort();
        if pairs.windows(2).any(|w| w[0].base == w[1].base) {
            return Err(Error::InvalidMarking("repeated base curve".into()));
        }
        Ok(AugmentedMarking { pairs })
    }

    pub fn pairs(&self) -> &[MarkedCurve<C>] {
        &self.pairs
    }

    pub fn base(&self) -> Vec<C> {
        self.pairs.iter().map(|p| p.base.clone()).collect()
    }

    pub fn transversals(&self) -> Vec<C> {
        self.pairs.iter().map(|p| p.transversal.clone()).collect()
    }

    pub fn depths(&self) -> Vec<u32> {
        self.pairs.iter().map(|p| p.depth).collect()
    }

    pub fn pair_of(&self, base: &C) -> Option<&MarkedCurve<C>> {
        self.pairs.iter().find(|p| &p.base == base)
    }

    /// `D_a`, zero off the base.
    pub fn depth_of(&self, a: &C) -> u32 {
        self.pair_of(a).map_or(0, |p| p.depth)
    }

    pub fn contains_base(&self, a: &C) -> bool {
        self.pair_of(a).is_some()
    }

    /// The same marking with every depth replaced.
    pub fn with_depths(&self, depths: &[u32]) -> Result<Self> {
        if depths.len() != self.pairs.len() {
            return Err(Error::LengthMismatch(depths.len(), self.pairs.len()));
        }
        let pairs = self.pairs.iter().zip(depths).map(|(p, &d)| MarkedCurve { depth: d, ..p.clone() }).collect();
        Ok(AugmentedMarking { pairs })
    }
}

/// Marking as supplied by a user: lists may be unpaired or inconsistent,
/// which [`validate`] reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingRecord<C> {
    pub base: Vec<C>,
    pub transversals: Vec<C>,
    /// `(curve, D)` entries.
    pub depth: Vec<(C, u32)>,
}

impl<C: Ord + Clone> From<&AugmentedMarking<C>> for MarkingRecord<C> {
    fn from(m: &AugmentedMarking<C>) -> Self {
        MarkingRecord {
            base: m.base(),
            transversals: m.transversals(),
            depth: m.pairs.iter().map(|p| (p.base.clone(), p.depth)).collect(),
        }
    }
}

/// Every violated marking invariant, empty when the record is valid.
pub fn validate<M: SurfaceModel>(model: &M, rec: &MarkingRecord<M::Curve>) -> Vec<String> {
    let mut out = Vec::new();
    let r = model.kind().complexity() as usize;
    if rec.base.len() != r {
        out.push(format!("base has {} curves, expected {r}", rec.base.len()));
    }
    if rec.transversals.len() != rec.base.len() {
        out.push("one transversal per base curve required".into());
    }
    for c in rec.base.iter().chain(&rec.transversals) {
        if let Err(e) = model.validate_curve(c) {
            out.push(format!("invalid curve: {e}"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let i = |a: &M::Curve, b: &M::Curve| model.intersection(a, b).unwrap_or(u64::MAX);
    for (k, a) in rec.base.iter().enumerate() {
        for b in &rec.base[k + 1..] {
            if a == b {
                out.push("repeated base curve".into());
            } else if i(a, b) != 0 {
                out.push("base curves intersect".into());
            }
        }
    }
    for (k, t) in rec.transversals.iter().enumerate() {
        let hits = rec.base.iter().filter(|b| i(t, b) != 0).count();
        if hits != 1 || i(t, &rec.base[k]) == 0 {
            out.push(format!("transversal {k} is not clean"));
        } else if i(t, &rec.base[k]) != model.transverse_intersection() {
            out.push(format!("transversal {k} is not at distance one from its base curve"));
        }
    }
    let mut seen = BTreeMap::new();
    for (c, _) in &rec.depth {
        if !rec.base.contains(c) {
            out.push("D off base".into());
        }
        if seen.insert(c.clone(), ()).is_some() {
            out.push("D given twice".into());
        }
    }
    if rec.depth.len() < rec.base.len() && out.is_empty() {
        out.push("D missing on a base curve".into());
    }
    out
}

/// Builds a marking from a record, failing with the first violation.
pub fn from_record<M: SurfaceModel>(model: &M, rec: &MarkingRecord<M::Curve>) -> Result<AugmentedMarking<M::Curve>> {
    if let Some(v) = validate(model, rec).into_iter().next() {
        return Err(Error::InvalidMarking(v));
    }
    let pairs = rec
        .base
        .iter()
        .zip(&rec.transversals)
        .map(|(b, t)| {
            let depth = rec.depth.iter().find(|(c, _)| c == b).map_or(0, |(_, d)| *d);
            MarkedCurve { base: b.clone(), transversal: t.clone(), depth }
        })
        .collect();
    AugmentedMarking::from_pairs(pairs)
}

/// Kind of an elementary move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    Flip { index: usize },
    Twist { index: usize, power: i64 },
    Vertical { index: usize, up: bool },
}

/// Largest twist power at depth `d`: `max(1, ceil(e^d) - 1)`, then capped.
pub fn max_twist_power(d: u32, cap: Option<u32>) -> u64 {
    let literal = (d as f64).exp().ceil() as u64 - 1;
    let n = literal.max(1);
    cap.map_or(n, |c| n.min(u64::from(c)))
}

/// Flip at pair `i`: exchange base curve and transversal, then re-clean the
/// other transversals keeping their annular coordinates.
pub fn flip<M: SurfaceModel>(
    model: &M,
    m: &AugmentedMarking<M::Curve>,
    i: usize,
) -> Result<AugmentedMarking<M::Curve>> {
    let p = &m.pairs[i];
    if p.depth != 0 {
        return Err(Error::Precondition("flip needs D = 0".into()));
    }
    let mut base = m.base();
    base[i] = p.transversal.clone();
    let mut pairs = Vec::with_capacity(m.pairs.len());
    for (j, q) in m.pairs.iter().enumerate() {
        if j == i {
            pairs.push(MarkedCurve { base: p.transversal.clone(), transversal: p.base.clone(), depth: 0 });
        } else {
            let tw = model.annular_twist(&q.base, &q.transversal)?;
            let t = model.transversal_with_twist(&base, j, tw)?;
            pairs.push(MarkedCurve { base: q.base.clone(), transversal: t, depth: q.depth });
        }
    }
    AugmentedMarking::from_pairs(pairs)
}

/// Applies one move.
pub fn apply_move<M: SurfaceModel>(
    model: &M,
    m: &AugmentedMarking<M::Curve>,
    mv: Move,
) -> Result<AugmentedMarking<M::Curve>> {
    match mv {
        Move::Flip { index } => flip(model, m, index),
        Move::Twist { index, power } => {
            let mut pairs = m.pairs.clone();
            let p = &mut pairs[index];
            p.transversal = model.twist(&p.transversal, &p.base, power)?;
            Ok(AugmentedMarking { pairs })
        }
        Move::Vertical { index, up } => {
            let mut pairs = m.pairs.clone();
            let p = &mut pairs[index];
            p.depth = if up {
                p.depth + 1
            } else {
                p.depth.checked_sub(1).ok_or_else(|| Error::Precondition("D would be negative".into()))?
            };
            Ok(AugmentedMarking { pairs })
        }
    }
}

/// The legal moves at `m`, in a fixed order.
pub fn legal_moves<C: Clone>(m: &AugmentedMarking<C>, caps: &Caps) -> Vec<Move> {
    let mut out = Vec::new();
    for (index, p) in m.pairs.iter().enumerate() {
        if p.depth == 0 {
            out.push(Move::Flip { index });
        }
        let nmax = max_twist_power(p.depth, caps.max_twist) as i64;
        for n in 1..=nmax {
            out.push(Move::Twist { index, power: n });
            out.push(Move::Twist { index, power: -n });
        }
        out.push(Move::Vertical { index, up: true });
        if p.depth > 0 {
            out.push(Move::Vertical { index, up: false });
        }
    }
    out
}

/// All markings one elementary move away, with their moves.
pub fn elementary_neighbors<M: SurfaceModel>(
    model: &M,
    m: &AugmentedMarking<M::Curve>,
    caps: &Caps,
) -> Result<Vec<(Move, AugmentedMarking<M::Curve>)>> {
    legal_moves(m, caps).into_iter().map(|mv| Ok((mv, apply_move(model, m, mv)?))).collect()
}
