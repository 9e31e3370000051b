//! Projection distances, the distance formulas and the coarse inequalities
//! they rest on, evaluated on finite marking data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::horoball::{self, HoroballVertex};
use crate::markings::project::project_annulus;
use crate::markings::{elementary_neighbors, AugmentedMarking, Caps, SurfaceModel};
use crate::surface::{interlocks, IntersectionOracle, Subsurface, SurfaceKind};

/// `[[x]]_K`: `x` when `x > K`, else 0.
pub fn threshold(x: i64, k: i64) -> i64 {
    if x > k {
        x
    } else {
        0
    }
}

/// Which distance formula a sum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Annular terms are twist differences.
    Marking,
    /// Annular terms are horoball distances.
    Augmented,
}

/// A thresholded sum with the terms that survived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdSum<C> {
    pub k: i64,
    pub contributions: Vec<(Subsurface<C>, i64)>,
    pub total: i64,
}

impl<C> ThresholdSum<C> {
    /// Keeps the terms above `k`.
    pub fn from_terms(k: i64, terms: impl IntoIterator<Item = (Subsurface<C>, i64)>) -> Self {
        let contributions: Vec<(Subsurface<C>, i64)> = terms.into_iter().filter(|(_, v)| *v > k).collect();
        let total = contributions.iter().map(|(_, v)| v).sum();
        ThresholdSum { k, contributions, total }
    }
}

/// Adapter exposing a model as an intersection oracle.
pub struct ModelOracle<'a, M>(pub &'a M);

impl<M: SurfaceModel> IntersectionOracle for ModelOracle<'_, M> {
    type Curve = M::Curve;

    fn surface(&self) -> SurfaceKind {
        self.0.kind()
    }

    fn intersection(&self, a: &M::Curve, b: &M::Curve) -> u64 {
        self.0.intersection(a, b).expect("validated curves")
    }
}

/// Horoball distance. The closed form equals the graph distance on the
/// certified range (its additive error was measured to be zero).
pub fn horoball_dist(u: HoroballVertex, v: HoroballVertex) -> i64 {
    horoball::dist_estimate(u, v) as i64
}

/// `d_Y(m1, m2)`.
pub fn proj_dist<M: SurfaceModel>(
    model: &M,
    m1: &AugmentedMarking<M::Curve>,
    m2: &AugmentedMarking<M::Curve>,
    y: &Subsurface<M::Curve>,
    variant: Variant,
) -> Result<i64> {
    match y {
        Subsurface::Annulus(a) => {
            let (p, q) = (project_annulus(model, m1, a)?, project_annulus(model, m2, a)?);
            Ok(match variant {
                Variant::Marking => (p.x - q.x).abs(),
                Variant::Augmented => horoball_dist(p, q),
            })
        }
        _ => {
            let mut curves = Vec::new();
            for m in [m1, m2] {
                let meeting: Vec<M::Curve> =
                    m.base().into_iter().filter(|c| model.meets(c, y).unwrap_or(false)).collect();
                if meeting.is_empty() {
                    return Err(Error::EmptyProjection);
                }
                curves.extend(meeting);
            }
            Ok(model.curve_complex_diam(y, &curves)? as i64)
        }
    }
}

/// Whether `b` is one elementary move from `a`.
pub fn adjacent<M: SurfaceModel>(
    model: &M,
    a: &AugmentedMarking<M::Curve>,
    b: &AugmentedMarking<M::Curve>,
) -> Result<bool> {
    Ok(elementary_neighbors(model, a, &Caps::default())?.iter().any(|(_, w)| w == b))
}

/// Candidate large links along a path: annuli about base curves and the
/// non-pants complementary pieces of sub-multicurves of bases.
pub fn harvest_domains<M: SurfaceModel>(
    model: &M,
    path: &[AugmentedMarking<M::Curve>],
) -> Result<Vec<Subsurface<M::Curve>>> {
    for w in path.windows(2) {
        if w[0] != w[1] && !adjacent(model, &w[0], &w[1])? {
            return Err(Error::Precondition("consecutive markings are not adjacent".into()));
        }
    }
    let mut out: Vec<Subsurface<M::Curve>> = path.iter().flat_map(|m| model.domains(&m.base())).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Both formula sums over `domains`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaTotals<C> {
    pub marking: ThresholdSum<C>,
    pub augmented: ThresholdSum<C>,
}

/// The distance formulas at threshold `k`, which must exceed `k_min`.
pub fn distance_formula<M: SurfaceModel>(
    model: &M,
    m1: &AugmentedMarking<M::Curve>,
    m2: &AugmentedMarking<M::Curve>,
    k: i64,
    k_min: i64,
    domains: &[Subsurface<M::Curve>],
) -> Result<FormulaTotals<M::Curve>> {
    if k <= k_min {
        return Err(Error::ThresholdTooSmall { k, min: k_min });
    }
    let mut mk = Vec::new();
    let mut am = Vec::new();
    for y in domains {
        if y.is_annulus() {
            mk.push((y.clone(), proj_dist(model, m1, m2, y, Variant::Marking)?));
            am.push((y.clone(), proj_dist(model, m1, m2, y, Variant::Augmented)?));
        } else {
            let d = proj_dist(model, m1, m2, y, Variant::Marking)?;
            mk.push((y.clone(), d));
            am.push((y.clone(), d));
        }
    }
    Ok(FormulaTotals { marking: ThresholdSum::from_terms(k, mk), augmented: ThresholdSum::from_terms(k, am) })
}

/// Twists about `core` of the curves crossing it.
fn crossing_twists<M: SurfaceModel>(model: &M, core: &M::Curve, curves: &[M::Curve]) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for c in curves {
        if model.intersection(c, core)? > 0 {
            out.push(model.annular_twist(core, c)?);
        }
    }
    Ok(out)
}

fn spread(xs: &[i64]) -> Result<i64> {
    let lo = xs.iter().min().ok_or(Error::EmptyProjection)?;
    let hi = xs.iter().max().ok_or(Error::EmptyProjection)?;
    Ok(hi - lo)
}

/// `d_Y(m, curves)`: diameter of the union of both projections to `y`.
pub fn dist_to_curves<M: SurfaceModel>(
    model: &M,
    m: &AugmentedMarking<M::Curve>,
    y: &Subsurface<M::Curve>,
    curves: &[M::Curve],
) -> Result<i64> {
    match y {
        Subsurface::Annulus(a) => {
            let own = match m.pair_of(a) {
                Some(p) => vec![model.annular_twist(a, &p.transversal)?],
                None => crossing_twists(model, a, &m.base())?,
            };
            let other = crossing_twists(model, a, curves)?;
            if own.is_empty() || other.is_empty() {
                return Err(Error::EmptyProjection);
            }
            spread(&[own, other].concat())
        }
        _ => {
            let mut all: Vec<M::Curve> = m.base().into_iter().filter(|c| model.meets(c, y).unwrap_or(false)).collect();
            let other: Vec<M::Curve> = curves.iter().filter(|c| model.meets(c, y).unwrap_or(false)).cloned().collect();
            if all.is_empty() || other.is_empty() {
                return Err(Error::EmptyProjection);
            }
            all.extend(other);
            Ok(model.curve_complex_diam(y, &all)? as i64)
        }
    }
}

/// `min { d_Y(m, boundary Z), d_Z(m, boundary Y) }` for interlocking `y`, `z`.
pub fn behrstock_min<M: SurfaceModel>(
    model: &M,
    m: &AugmentedMarking<M::Curve>,
    y: &Subsurface<M::Curve>,
    z: &Subsurface<M::Curve>,
) -> Result<i64> {
    if !interlocks(&ModelOracle(model), y, z) {
        return Err(Error::NotInterlocking);
    }
    let a = dist_to_curves(model, m, y, z.boundary())?;
    let b = dist_to_curves(model, m, z, y.boundary())?;
    Ok(a.min(b))
}

/// Diameters of a geodesic's projection to an annulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicImage {
    /// Diameter of the twist coordinates.
    pub twist_diam: i64,
    /// Diameter in the horoball, every vertex at depth 0.
    pub horoball_diam: i64,
}

/// Projection diameter of a geodesic of curves to the annulus about `core`.
///
/// Checks that consecutive curves are adjacent, that the ends are at
/// distance `len - 1`, and that every vertex is at distance more than 1
/// from `core`.
pub fn bgit_check<M: SurfaceModel>(model: &M, geodesic: &[M::Curve], core: &M::Curve) -> Result<GeodesicImage> {
    if geodesic.is_empty() {
        return Err(Error::Precondition("empty geodesic".into()));
    }
    let d = |a: &M::Curve, b: &M::Curve| model.curve_complex_diam(&Subsurface::Whole, &[a.clone(), b.clone()]);
    for w in geodesic.windows(2) {
        if d(&w[0], &w[1])? != 1 {
            return Err(Error::Precondition("consecutive vertices are not adjacent".into()));
        }
    }
    if d(&geodesic[0], &geodesic[geodesic.len() - 1])? != geodesic.len() as u64 - 1 {
        return Err(Error::Precondition("not a geodesic".into()));
    }
    for g in geodesic {
        if d(g, core)? <= 1 {
            return Err(Error::Precondition("geodesic meets the star of the core".into()));
        }
    }
    let tw = crossing_twists(model, core, geodesic)?;
    let pts: Vec<HoroballVertex> = tw.iter().map(|&x| HoroballVertex { x, m: 0 }).collect();
    let mut hd = 0;
    for p in &pts {
        for q in &pts {
            hd = hd.max(horoball_dist(*p, *q));
        }
    }
    Ok(GeodesicImage { twist_diam: spread(&tw)?, horoball_diam: hd })
}

/// Indices of a path whose base contains the boundary of `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActiveSegment {
    pub indices: Vec<usize>,
    pub connected: bool,
}

pub fn active_segment<C: Clone + Ord>(path: &[AugmentedMarking<C>], y: &Subsurface<C>) -> ActiveSegment {
    let indices: Vec<usize> = path
        .iter()
        .enumerate()
        .filter(|(_, m)| y.boundary().iter().all(|c| m.contains_base(c)))
        .map(|(i, _)| i)
        .collect();
    let connected = indices.windows(2).all(|w| w[1] == w[0] + 1);
    ActiveSegment { indices, connected }
}

/// Whether some boundary curve of `y` crosses some boundary curve of `z`.
pub fn boundaries_cross<M: SurfaceModel>(
    model: &M,
    y: &Subsurface<M::Curve>,
    z: &Subsurface<M::Curve>,
) -> Result<bool> {
    for a in y.boundary() {
        for b in z.boundary() {
            if model.intersection(a, b)? > 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `max_z d_Y(x, z) - d_Y(x, end)` along a path from `x`.
pub fn endpoint_monotonicity<M: SurfaceModel>(
    model: &M,
    path: &[AugmentedMarking<M::Curve>],
    y: &Subsurface<M::Curve>,
) -> Result<i64> {
    let (first, last) = match (path.first(), path.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Precondition("empty path".into())),
    };
    let end = proj_dist(model, first, last, y, Variant::Augmented)?;
    let mut worst = i64::MIN;
    for z in path {
        worst = worst.max(proj_dist(model, first, z, y, Variant::Augmented)? - end);
    }
    Ok(worst)
}
