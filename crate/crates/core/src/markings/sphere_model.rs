//! Markings of `S_{0,5}` in normal coordinates.
//!
//! Base curves are two disjoint curves; the transversal of one is a Farey
//! neighbor of it in the four-holed sphere bounded by the other.

use crate::curves::atlas::Atlas;
use crate::curves::CurveSystem;
use crate::error::{Error, Result};
use crate::farey::{self, Slope};
use crate::surface::{Subsurface, SurfaceKind};

use super::{AugmentedMarking, SurfaceModel};

#[derive(Debug, Clone, Copy)]
pub struct SphereModel {
    atlas: &'static Atlas,
}

impl SphereModel {
    pub fn new() -> Result<Self> {
        Ok(SphereModel { atlas: Atlas::for_kind(SurfaceKind::S05)? })
    }

    pub fn atlas(&self) -> &'static Atlas {
        self.atlas
    }
}

impl SurfaceModel for SphereModel {
    type Curve = CurveSystem;

    fn kind(&self) -> SurfaceKind {
        SurfaceKind::S05
    }

    fn validate_curve(&self, c: &CurveSystem) -> Result<()> {
        self.atlas.engine().validate(c)
    }

    fn intersection(&self, a: &CurveSystem, b: &CurveSystem) -> Result<u64> {
        self.atlas.intersection(a, b)
    }

    fn transverse_intersection(&self) -> u64 {
        2
    }

    fn twist(&self, c: &CurveSystem, about: &CurveSystem, n: i64) -> Result<CurveSystem> {
        self.atlas.engine().half_twist(c, about, n)
    }

    fn annular_twist(&self, core: &CurveSystem, x: &CurveSystem) -> Result<i64> {
        self.atlas.twist(core, x)
    }

    fn transversal_with_twist(&self, base: &[CurveSystem], i: usize, twist: i64) -> Result<CurveSystem> {
        let [a, b] = base else {
            return Err(Error::InvalidMarking("a pants decomposition of S_{0,5} has two curves".into()));
        };
        let (core, other) = if i == 0 { (a, b) } else { (b, a) };
        let piece = self.atlas.piece(Some(other))?;
        let frame = self.atlas.annulus(core)?;
        let sigma = piece.slope_of(core)?;
        let reference = farey::reference_neighbor(sigma);
        let at = |k: i64| piece.curve(farey::neighbor_with_twist(sigma, reference, k));
        let t0 = frame.twist(&at(0))?;
        let step = frame.twist(&at(1))? - t0;
        if step.abs() != 1 {
            return Err(Error::Degenerate("annular coordinate is not a unit shift".into()));
        }
        let t = at((twist - t0) * step);
        debug_assert_eq!(frame.twist(&t).ok(), Some(twist));
        Ok(t)
    }

    fn domains(&self, base: &[CurveSystem]) -> Vec<Subsurface<CurveSystem>> {
        let mut out = vec![Subsurface::Whole];
        out.extend(base.iter().map(|a| Subsurface::Annulus(a.clone())));
        out.extend(base.iter().map(|a| Subsurface::Piece { boundary: vec![a.clone()], component: 0 }));
        out
    }

    fn curve_complex_diam(&self, y: &Subsurface<CurveSystem>, curves: &[CurveSystem]) -> Result<u64> {
        match y {
            Subsurface::Whole => {
                let mut d = 0;
                for (k, a) in curves.iter().enumerate() {
                    for b in &curves[k + 1..] {
                        d = d.max(self.atlas.curve_graph_dist(a, b)?);
                    }
                }
                Ok(d)
            }
            Subsurface::Piece { boundary, component: 0 } if boundary.len() == 1 => {
                let mut slopes = Vec::new();
                for c in curves {
                    slopes.extend(self.atlas.support(&boundary[0], c)?);
                }
                if slopes.is_empty() {
                    return Err(Error::EmptyProjection);
                }
                slopes.sort();
                slopes.dedup();
                let mut d = 0;
                for (k, a) in slopes.iter().enumerate() {
                    for b in &slopes[k + 1..] {
                        d = d.max(farey::cc_dist(*a, *b));
                    }
                }
                Ok(d)
            }
            Subsurface::Piece { .. } => Err(Error::PantsTarget),
            Subsurface::Annulus(_) => Err(Error::Precondition("annuli carry twist coordinates".into())),
        }
    }

    fn meets(&self, z: &CurveSystem, y: &Subsurface<CurveSystem>) -> Result<bool> {
        match y {
            Subsurface::Whole => Ok(true),
            Subsurface::Piece { boundary, component: 0 } if boundary.len() == 1 => {
                Ok(!self.atlas.support(&boundary[0], z)?.is_empty())
            }
            Subsurface::Piece { .. } => Err(Error::PantsTarget),
            Subsurface::Annulus(c) => Ok(self.intersection(z, c)? > 0),
        }
    }

    fn complement_pieces(&self, delta: &[CurveSystem]) -> Vec<Subsurface<CurveSystem>> {
        match delta {
            [] => vec![Subsurface::Whole],
            [d] => vec![Subsurface::Piece { boundary: vec![d.clone()], component: 0 }],
            _ => Vec::new(),
        }
    }

    fn project_piece(
        &self,
        m: &AugmentedMarking<CurveSystem>,
        y: &Subsurface<CurveSystem>,
    ) -> Result<AugmentedMarking<Slope>> {
        match y {
            Subsurface::Piece { boundary, component: 0 } if boundary.len() == 1 => {
                super::project::project_piece(self, m, &boundary[0])
            }
            Subsurface::Piece { .. } => Err(Error::PantsTarget),
            _ => Err(Error::Precondition("not a proper non-annular piece".into())),
        }
    }
}
