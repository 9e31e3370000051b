//! Product regions, distance to a region, the depth orthant, thickness
//! chains and finite-scale thick/thin diagnostics.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coarse::{dist_to_curves, proj_dist, ThresholdSum, Variant};
use crate::curves::CurveSystem;
use crate::error::{Error, Result};
use crate::farey::Slope;
use crate::markings::project::project_annulus;
use crate::markings::{AnnularPoint, AugmentedMarking, MarkedCurve, SphereModel, SurfaceModel};
use crate::surface::Subsurface;

fn check_simplex<M: SurfaceModel>(model: &M, delta: &[M::Curve]) -> Result<()> {
    for (k, a) in delta.iter().enumerate() {
        for b in &delta[k + 1..] {
            if a == b || model.intersection(a, b)? != 0 {
                return Err(Error::Precondition("delta is not a simplex".into()));
            }
        }
    }
    Ok(())
}

/// Whether every curve of `delta` is a base curve of `m`.
pub fn in_q<M: SurfaceModel>(model: &M, m: &AugmentedMarking<M::Curve>, delta: &[M::Curve]) -> Result<bool> {
    check_simplex(model, delta)?;
    Ok(delta.iter().all(|d| m.contains_base(d)))
}

/// Membership without the simplex check, for curves known to be disjoint.
pub fn in_q_unchecked<C: Clone + Ord>(m: &AugmentedMarking<C>, delta: &[C]) -> bool {
    delta.iter().all(|d| m.contains_base(d))
}

/// One factor of a product region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    Piece(AugmentedMarking<Slope>),
    Horoball(AnnularPoint),
}

/// Projections to the factors of `Q(delta)`: complementary pieces, then
/// annuli about the curves of `delta`.
pub fn theta<M: SurfaceModel>(
    model: &M,
    m: &AugmentedMarking<M::Curve>,
    delta: &[M::Curve],
) -> Result<Vec<(Subsurface<M::Curve>, Factor)>> {
    if !in_q(model, m, delta)? {
        return Err(Error::Precondition("marking is not in the region".into()));
    }
    let mut out = Vec::new();
    for y in model.complement_pieces(delta) {
        if matches!(y, Subsurface::Whole) {
            continue;
        }
        out.push((y.clone(), Factor::Piece(model.project_piece(m, &y)?)));
    }
    for d in delta {
        out.push((Subsurface::Annulus(d.clone()), Factor::Horoball(project_annulus(model, m, d)?)));
    }
    Ok(out)
}

/// Whether `y` interlocks the multicurve `delta`: some curve of `delta`
/// crosses the boundary (or core) of `y`.
pub fn crosses_delta<M: SurfaceModel>(model: &M, y: &Subsurface<M::Curve>, delta: &[M::Curve]) -> Result<bool> {
    for c in y.boundary() {
        for d in delta {
            if model.intersection(c, d)? > 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `sum [[d_Y(m, delta)]]_K` over the domains interlocking `delta`.
pub fn rho_dist<M: SurfaceModel>(
    model: &M,
    m: &AugmentedMarking<M::Curve>,
    delta: &[M::Curve],
    k: i64,
    k_min: i64,
    domains: &[Subsurface<M::Curve>],
) -> Result<ThresholdSum<M::Curve>> {
    if delta.is_empty() {
        return Err(Error::Degenerate("empty multicurve".into()));
    }
    if k <= k_min {
        return Err(Error::ThresholdTooSmall { k, min: k_min });
    }
    check_simplex(model, delta)?;
    let mut terms = Vec::new();
    for y in domains {
        if crosses_delta(model, y, delta)? {
            terms.push((y.clone(), dist_to_curves(model, m, y, delta)?));
        }
    }
    Ok(ThresholdSum::from_terms(k, terms))
}

/// The base marking with its depths set to `depths`.
pub fn orthant_point<C: Clone + Ord>(base: &AugmentedMarking<C>, depths: &[i64]) -> Result<AugmentedMarking<C>> {
    if base.depths().iter().any(|&d| d != 0) {
        return Err(Error::Precondition("orthant base must have all D = 0".into()));
    }
    if depths.iter().any(|&d| d < 0) {
        return Err(Error::Precondition("negative depth".into()));
    }
    let ds: Vec<u32> = depths.iter().map(|&d| d as u32).collect();
    base.with_depths(&ds)
}

/// Lower bound on marking distance from depths alone: only vertical moves
/// change depths, by one, and flips happen at depth zero.
pub fn depth_lower_bound<C: Clone + Ord>(a: &AugmentedMarking<C>, b: &AugmentedMarking<C>) -> u64 {
    let curves: BTreeSet<C> = a.base().into_iter().chain(b.base()).collect();
    curves.iter().map(|c| (i64::from(a.depth_of(c)) - i64::from(b.depth_of(c))).unsigned_abs()).sum()
}

/// A thickness chain with its vertical-ray witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThicknessChain {
    pub curves: Vec<CurveSystem>,
    /// Per link (or for a single curve): a base marking in `Q(link)` and the
    /// certified diameter of its vertical ray.
    pub witnesses: Vec<(AugmentedMarking<CurveSystem>, u64)>,
}

/// Path `a = g_1, ..., g_k = b` of pairwise-consecutive disjoint curves on
/// `S_{0,5}` with a vertical ray of diameter `r` in each `Q(g_i + g_{i+1})`.
///
/// The path follows a word from the standard curve: a half twist about
/// round curve 2 is bridged through round curve 4, and the other
/// generators fix the standard curve. Loops are cut out.
pub fn thickness_chain(model: &SphereModel, a: &CurveSystem, b: &CurveSystem, r: u64) -> Result<ThicknessChain> {
    let atlas = model.atlas();
    let eng = atlas.engine();
    eng.validate(a)?;
    eng.validate(b)?;
    let wa = eng.reduction(a)?;
    let wb = eng.reduction(b)?;
    // u(c) = wa^-1 wb (c) for the standard curve c.
    let mut u = crate::curves::word::inverse_word(&wa);
    u.extend(wb.iter().copied());
    let c = eng.standard_curve().clone();
    let bridge = eng.round_curve(4).clone();
    let mut pts = vec![c.clone()];
    for j in 0..u.len() {
        let prefix = &u[..j];
        if u[j].index == 2 {
            pts.push(eng.apply_word(prefix, &bridge));
            pts.push(eng.apply_word(&u[..=j], &c));
        }
    }
    let mut curves: Vec<CurveSystem> = pts.iter().map(|p| eng.apply_word(&wa, p)).collect();
    curves.dedup();
    // Cut loops.
    let mut out: Vec<CurveSystem> = Vec::new();
    for g in curves {
        if let Some(pos) = out.iter().position(|h| *h == g) {
            out.truncate(pos + 1);
        } else {
            out.push(g);
        }
    }
    if out.first() != Some(a) || out.last() != Some(b) {
        return Err(Error::Degenerate("chain does not join the curves".into()));
    }
    let links: Vec<Vec<CurveSystem>> =
        if out.len() == 1 { vec![vec![a.clone()]] } else { out.windows(2).map(|w| w.to_vec()).collect() };
    let mut witnesses = Vec::with_capacity(links.len());
    for link in links {
        let m = pants_marking(model, &link)?;
        let top = orthant_point(&m, &ray_depths(&m, &link[0], r as i64))?;
        let d = depth_lower_bound(&m, &top);
        if d != r {
            return Err(Error::Degenerate("witness ray has the wrong length".into()));
        }
        witnesses.push((m, d));
    }
    Ok(ThicknessChain { curves: out, witnesses })
}

fn ray_depths(m: &AugmentedMarking<CurveSystem>, along: &CurveSystem, r: i64) -> Vec<i64> {
    m.pairs().iter().map(|p| if &p.base == along { r } else { 0 }).collect()
}

/// A marking of `S_{0,5}` whose base contains `curves` (one or two disjoint
/// curves), completed by a disjoint round-curve image, with twist-zero
/// transversals.
pub fn pants_marking(model: &SphereModel, curves: &[CurveSystem]) -> Result<AugmentedMarking<CurveSystem>> {
    let atlas = model.atlas();
    let eng = atlas.engine();
    let base: Vec<CurveSystem> = match curves {
        [a] => {
            let w = eng.reduction(a)?;
            vec![a.clone(), eng.from_round(3, &w)]
        }
        [a, b] => {
            if a == b || atlas.intersection(a, b)? != 0 {
                return Err(Error::Precondition("link curves must be disjoint".into()));
            }
            vec![a.clone(), b.clone()]
        }
        _ => return Err(Error::Precondition("one or two curves".into())),
    };
    let pairs = (0..2)
        .map(|i| {
            Ok(MarkedCurve { base: base[i].clone(), transversal: model.transversal_with_twist(&base, i, 0)?, depth: 0 })
        })
        .collect::<Result<Vec<_>>>()?;
    AugmentedMarking::from_pairs(pairs)
}

/// A strictly increasing scaling sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ScalingSequence(Vec<u64>);

impl TryFrom<Vec<u64>> for ScalingSequence {
    type Error = Error;

    fn try_from(s: Vec<u64>) -> Result<Self> {
        if s.len() < 2 || s[0] == 0 || s.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Precondition("scaling sequence must be positive and strictly increasing".into()));
        }
        Ok(ScalingSequence(s))
    }
}

impl From<ScalingSequence> for Vec<u64> {
    fn from(s: ScalingSequence) -> Self {
        s.0
    }
}

impl ScalingSequence {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn linear(n: usize) -> Result<Self> {
        (1..=n as u64).collect::<Vec<_>>().try_into()
    }

    pub fn quadratic(n: usize) -> Result<Self> {
        (1..=n as u64).map(|i| i * i).collect::<Vec<_>>().try_into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Thick,
    Thin,
}

/// One base-curve track with its depth ratios on the final third.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Track<C> {
    pub curve: C,
    pub ratios: Vec<f64>,
    pub escaping: bool,
}

/// Splitting data at one index of a thin sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting<C> {
    pub index: usize,
    pub delta: Vec<C>,
    pub pieces: Vec<Subsurface<C>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification<C> {
    pub a: usize,
    pub verdict: Verdict,
    pub tracks: Vec<Track<C>>,
    /// Curves with positive depth that are base curves only on part of the
    /// final third.
    pub unmatched: Vec<C>,
    /// Per final-third index, for thin sequences.
    pub splittings: Vec<Splitting<C>>,
    /// Escaping curves: one horoball track each.
    pub horoball_tracks: Vec<C>,
}

/// First index of the final third.
pub fn final_third_start(len: usize) -> usize {
    (2 * len) / 3
}

/// Finite-scale thick/thin diagnostic.
///
/// A base curve present at every index of the final third escapes when
/// `D / s_n >= tau` there and the ratios are nondecreasing.
pub fn classify_sequence<M: SurfaceModel>(
    model: &M,
    ms: &[AugmentedMarking<M::Curve>],
    s: &ScalingSequence,
    tau: f64,
) -> Result<Classification<M::Curve>> {
    if ms.len() != s.values().len() {
        return Err(Error::LengthMismatch(ms.len(), s.values().len()));
    }
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::Precondition("tau must be positive".into()));
    }
    let start = final_third_start(ms.len());
    let window = &ms[start..];
    let scales = &s.values()[start..];
    let all: BTreeSet<M::Curve> = window.iter().flat_map(|m| m.base()).collect();
    let mut tracks = Vec::new();
    let mut unmatched = Vec::new();
    for c in all {
        let present = window.iter().filter(|m| m.contains_base(&c)).count();
        if present < window.len() {
            if window.iter().any(|m| m.depth_of(&c) > 0) {
                unmatched.push(c);
            }
            continue;
        }
        let ratios: Vec<f64> =
            window.iter().zip(scales).map(|(m, &sn)| f64::from(m.depth_of(&c)) / sn as f64).collect();
        let escaping = ratios.iter().all(|&r| r >= tau) && ratios.windows(2).all(|w| w[1] >= w[0]);
        tracks.push(Track { curve: c, ratios, escaping });
    }
    let escaping: Vec<M::Curve> = tracks.iter().filter(|t| t.escaping).map(|t| t.curve.clone()).collect();
    let a = escaping.len();
    let verdict = if a == 0 { Verdict::Thick } else { Verdict::Thin };
    let splittings = if a == 0 {
        Vec::new()
    } else {
        (start..ms.len())
            .map(|index| Splitting { index, delta: escaping.clone(), pieces: model.complement_pieces(&escaping) })
            .collect()
    };
    Ok(Classification { a, verdict, tracks, unmatched, splittings, horoball_tracks: escaping })
}

/// Per index, `max_Y d_Y(x_n, mu_n) / s_n` over the proper domains of both
/// markings.
pub fn sublinear_profile<M: SurfaceModel>(
    model: &M,
    xs: &[AugmentedMarking<M::Curve>],
    mus: &[AugmentedMarking<M::Curve>],
    s: &ScalingSequence,
) -> Result<Vec<f64>> {
    if xs.len() != mus.len() {
        return Err(Error::LengthMismatch(xs.len(), mus.len()));
    }
    if xs.len() != s.values().len() {
        return Err(Error::LengthMismatch(xs.len(), s.values().len()));
    }
    xs.iter()
        .zip(mus)
        .zip(s.values())
        .map(|((x, mu), &sn)| {
            let mut domains: Vec<Subsurface<M::Curve>> =
                model.domains(&x.base()).into_iter().chain(model.domains(&mu.base())).collect();
            domains.retain(|y| !matches!(y, Subsurface::Whole));
            domains.sort();
            domains.dedup();
            let mut best = 0;
            for y in &domains {
                match proj_dist(model, x, mu, y, Variant::Augmented) {
                    Ok(d) => best = best.max(d),
                    Err(Error::EmptyProjection) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(best as f64 / sn as f64)
        })
        .collect()
}

/// Component-sum distance between two points of one product region.
pub fn factor_sum<C: PartialEq>(
    a: &[(Subsurface<C>, Factor)],
    b: &[(Subsurface<C>, Factor)],
    piece_dist: impl Fn(&AugmentedMarking<Slope>, &AugmentedMarking<Slope>) -> Result<i64>,
) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let mut total = 0;
    for ((ya, fa), (yb, fb)) in a.iter().zip(b) {
        if ya != yb {
            return Err(Error::Precondition("points of different regions".into()));
        }
        total += match (fa, fb) {
            (Factor::Horoball(p), Factor::Horoball(q)) => crate::coarse::horoball_dist(*p, *q),
            (Factor::Piece(p), Factor::Piece(q)) => piece_dist(p, q)?,
            _ => return Err(Error::Precondition("mismatched factors".into())),
        };
    }
    Ok(total)
}
