//! Projections of augmented markings to subsurfaces.

use crate::curves::CurveSystem;
use crate::error::{Error, Result};
use crate::farey::Slope;
use crate::horoball::HoroballVertex;
use crate::surface::Subsurface;

use super::{AugmentedMarking, MarkedCurve, SphereModel, SurfaceModel};

/// A point of the horoball over an annulus: twist and depth.
pub type AnnularPoint = HoroballVertex;

/// Image of a marking in a subsurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projected<C: Clone> {
    /// The whole surface: the marking itself.
    Whole(AugmentedMarking<C>),
    /// A four-holed sphere piece, in the slope model of its chart.
    Piece(AugmentedMarking<Slope>),
    Annulus(AnnularPoint),
}

/// `(twist of t_a, D_a)` when `a` is a base curve, otherwise the least
/// twist of the base curves crossing `a` at depth 0.
pub fn project_annulus<M: SurfaceModel>(
    model: &M,
    m: &AugmentedMarking<M::Curve>,
    core: &M::Curve,
) -> Result<AnnularPoint> {
    if let Some(p) = m.pair_of(core) {
        let x = model.annular_twist(core, &p.transversal)?;
        return Ok(HoroballVertex { x, m: p.depth });
    }
    let mut best: Option<i64> = None;
    for b in m.base() {
        if model.intersection(&b, core)? > 0 {
            let t = model.annular_twist(core, &b)?;
            best = Some(best.map_or(t, |x| x.min(t)));
        }
    }
    best.map(|x| HoroballVertex { x, m: 0 }).ok_or(Error::EmptyProjection)
}

/// Marking induced on the four-holed sphere bounded by `boundary`.
///
/// The base curve is the projected base curve of least total intersection
/// with the base (then least slope); its transversal has the annular
/// coordinate of the marking and its depth is carried over.
pub fn project_piece(
    model: &SphereModel,
    m: &AugmentedMarking<CurveSystem>,
    boundary: &CurveSystem,
) -> Result<AugmentedMarking<Slope>> {
    let atlas = model.atlas();
    let piece = atlas.piece(Some(boundary))?;
    let mut cands: Vec<Slope> = Vec::new();
    for b in m.base() {
        cands.extend(piece.support(&b)?);
    }
    cands.sort();
    cands.dedup();
    let base = m.base();
    let mut scored = Vec::with_capacity(cands.len());
    for s in cands {
        let c = piece.curve(s);
        let mut total = 0;
        for b in &base {
            total += model.intersection(&c, b)?;
        }
        scored.push((total, s, c));
    }
    let (_, sigma, gamma) = scored.into_iter().min_by_key(|(t, s, _)| (*t, *s)).ok_or(Error::EmptyProjection)?;
    let point = project_annulus(model, m, &gamma)?;
    let t = model.transversal_with_twist(&[gamma.clone(), boundary.clone()], 0, point.x)?;
    let pair = MarkedCurve { base: sigma, transversal: piece.slope_of(&t)?, depth: m.depth_of(&gamma) };
    AugmentedMarking::from_pairs(vec![pair])
}

/// Projection to any subsurface.
pub fn project_augmented(
    model: &SphereModel,
    m: &AugmentedMarking<CurveSystem>,
    y: &Subsurface<CurveSystem>,
) -> Result<Projected<CurveSystem>> {
    match y {
        Subsurface::Whole => Ok(Projected::Whole(m.clone())),
        Subsurface::Annulus(a) => Ok(Projected::Annulus(project_annulus(model, m, a)?)),
        Subsurface::Piece { boundary, component: 0 } if boundary.len() == 1 => {
            Ok(Projected::Piece(project_piece(model, m, &boundary[0])?))
        }
        Subsurface::Piece { .. } => Err(Error::PantsTarget),
    }
}
