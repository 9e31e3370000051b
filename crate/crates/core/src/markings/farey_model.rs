//! Markings of `S_{1,1}` and `S_{0,4}` in the slope model.
//!
//! Curves are slopes; `i(a, b) = c |det(a, b)|` with `c = 1` on `S_{1,1}`
//! and `c = 2` on `S_{0,4}`. The twist generator is the parabolic fixing the
//! core (a Dehn twist on `S_{1,1}`, a half twist on `S_{0,4}`).

use crate::error::{Error, Result};
use crate::farey::{self, Slope, Unimodular};
use crate::surface::{Subsurface, SurfaceKind};

use super::{AugmentedMarking, SurfaceModel};

#[derive(Debug, Clone, Copy)]
pub struct FareyModel {
    kind: SurfaceKind,
}

impl FareyModel {
    pub fn new(kind: SurfaceKind) -> Result<Self> {
        match kind {
            SurfaceKind::S11 | SurfaceKind::S04 => Ok(FareyModel { kind }),
            other => Err(Error::UnsupportedSurface { genus: other.genus, punctures: other.punctures }),
        }
    }

    fn scale(&self) -> u64 {
        if self.kind == SurfaceKind::S11 {
            1
        } else {
            2
        }
    }
}

impl SurfaceModel for FareyModel {
    type Curve = Slope;

    fn kind(&self) -> SurfaceKind {
        self.kind
    }

    fn validate_curve(&self, _c: &Slope) -> Result<()> {
        Ok(())
    }

    fn intersection(&self, a: &Slope, b: &Slope) -> Result<u64> {
        Ok(self.scale() * farey::det(*a, *b).unsigned_abs())
    }

    fn transverse_intersection(&self) -> u64 {
        self.scale()
    }

    fn twist(&self, c: &Slope, about: &Slope, n: i64) -> Result<Slope> {
        Ok(Unimodular::twist(*about).pow(n).apply(*c))
    }

    fn annular_twist(&self, core: &Slope, x: &Slope) -> Result<i64> {
        farey::twist_coordinate(*core, *x, farey::reference_neighbor(*core))
    }

    fn transversal_with_twist(&self, base: &[Slope], i: usize, twist: i64) -> Result<Slope> {
        let a = base[i];
        Ok(farey::neighbor_with_twist(a, farey::reference_neighbor(a), twist))
    }

    fn domains(&self, base: &[Slope]) -> Vec<Subsurface<Slope>> {
        let mut out = vec![Subsurface::Whole];
        out.extend(base.iter().map(|&a| Subsurface::Annulus(a)));
        out
    }

    fn curve_complex_diam(&self, y: &Subsurface<Slope>, curves: &[Slope]) -> Result<u64> {
        if !matches!(y, Subsurface::Whole) {
            return Err(Error::Precondition("the slope model has no proper non-annular subsurface".into()));
        }
        let mut d = 0;
        for (k, a) in curves.iter().enumerate() {
            for b in &curves[k + 1..] {
                d = d.max(farey::cc_dist(*a, *b));
            }
        }
        Ok(d)
    }

    fn meets(&self, _z: &Slope, y: &Subsurface<Slope>) -> Result<bool> {
        Ok(matches!(y, Subsurface::Whole))
    }

    fn complement_pieces(&self, delta: &[Slope]) -> Vec<Subsurface<Slope>> {
        if delta.is_empty() {
            vec![Subsurface::Whole]
        } else {
            Vec::new()
        }
    }

    fn project_piece(&self, _m: &AugmentedMarking<Slope>, _y: &Subsurface<Slope>) -> Result<AugmentedMarking<Slope>> {
        Err(Error::PantsTarget)
    }
}
