//! Surface kinds, subsurface descriptors and the interlocking relation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite-type surface `S_{g,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceKind {
    pub genus: u32,
    pub punctures: u32,
}

impl SurfaceKind {
    pub const S11: SurfaceKind = SurfaceKind { genus: 1, punctures: 1 };
    pub const S04: SurfaceKind = SurfaceKind { genus: 0, punctures: 4 };
    pub const S05: SurfaceKind = SurfaceKind { genus: 0, punctures: 5 };

    /// Kinds with exact curve arithmetic.
    pub const ALLOWLIST: [SurfaceKind; 3] = [Self::S11, Self::S04, Self::S05];

    /// Builds a kind on the allowlist.
    pub fn new(genus: u32, punctures: u32) -> Result<Self> {
        let s = SurfaceKind { genus, punctures };
        if Self::ALLOWLIST.contains(&s) {
            Ok(s)
        } else {
            Err(Error::UnsupportedSurface { genus, punctures })
        }
    }

    /// Number of curves in a pants decomposition, `3g - 3 + n`.
    pub fn complexity(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.punctures as i64
    }

    /// Euler characteristic `2 - 2g - n`.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    pub fn is_pants(&self) -> bool {
        self.genus == 0 && self.punctures == 3
    }
}

/// Free-standing form of [`SurfaceKind::complexity`].
pub fn complexity(s: SurfaceKind) -> i64 {
    s.complexity()
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.genus, self.punctures)
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::SurfaceName(s.to_string());
        let (g, n) = s.trim().split_once(',').ok_or_else(bad)?;
        let g = g.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        SurfaceKind::new(g, n)
    }
}

/// A subsurface of an ambient surface, named through curves of type `C`.
///
/// `Piece` is a non-annular complementary component of a multicurve.
/// Components are indexed by decreasing complexity, so index 0 of a
/// separating curve on `S_{0,5}` is the four-holed sphere side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subsurface<C> {
    Whole,
    Annulus(C),
    Piece { boundary: Vec<C>, component: usize },
}

impl<C> Subsurface<C> {
    pub fn is_annulus(&self) -> bool {
        matches!(self, Subsurface::Annulus(_))
    }

    /// Curves forming the boundary (or core, for annuli).
    pub fn boundary(&self) -> &[C] {
        match self {
            Subsurface::Whole => &[],
            Subsurface::Annulus(c) => std::slice::from_ref(c),
            Subsurface::Piece { boundary, .. } => boundary,
        }
    }
}

/// Geometric intersection numbers between curves of one ambient surface.
pub trait IntersectionOracle {
    type Curve: Clone + Eq;

    fn surface(&self) -> SurfaceKind;
    fn intersection(&self, a: &Self::Curve, b: &Self::Curve) -> u64;

    /// Whether a curve can be isotoped into the given piece.
    ///
    /// Only single-curve boundaries occur on the allowlist, where a curve
    /// disjoint from and distinct from the boundary lies in the
    /// four-holed sphere side.
    fn lies_in_piece(&self, c: &Self::Curve, boundary: &[Self::Curve], component: usize) -> bool {
        component == 0 && boundary.iter().all(|b| b != c && self.intersection(c, b) == 0)
    }
}

/// Whether `y` and `z` overlap without either being nested in the other.
///
/// For the allowlisted surfaces the only proper non-annular subsurfaces are
/// four-holed spheres bounded by one curve of `S_{0,5}`. Two of those with
/// distinct boundaries always overlap; an annulus overlaps a piece exactly
/// when its core crosses the piece boundary.
pub fn interlocks<O: IntersectionOracle>(oracle: &O, y: &Subsurface<O::Curve>, z: &Subsurface<O::Curve>) -> bool {
    use Subsurface::*;
    match (y, z) {
        (Whole, _) | (_, Whole) => false,
        (Annulus(a), Annulus(b)) => oracle.intersection(a, b) > 0,
        (Annulus(a), Piece { boundary, .. }) | (Piece { boundary, .. }, Annulus(a)) => {
            boundary.iter().any(|d| oracle.intersection(a, d) > 0)
        }
        (Piece { boundary: b1, component: c1 }, Piece { boundary: b2, component: c2 }) => {
            if b1 == b2 && c1 == c2 {
                return false;
            }
            let crosses = b1.iter().any(|d| b2.iter().any(|e| oracle.intersection(d, e) > 0));
            crosses
                || (b1.iter().any(|d| oracle.lies_in_piece(d, b2, *c2))
                    && b2.iter().any(|e| oracle.lies_in_piece(e, b1, *c1)))
        }
    }
}

/// Checks that two descriptors share an ambient surface before comparing.
pub fn interlocks_checked<O: IntersectionOracle>(
    oracle: &O,
    ambient_y: SurfaceKind,
    y: &Subsurface<O::Curve>,
    ambient_z: SurfaceKind,
    z: &Subsurface<O::Curve>,
) -> Result<bool> {
    if ambient_y != ambient_z || ambient_y != oracle.surface() {
        return Err(Error::AmbientMismatch);
    }
    Ok(interlocks(oracle, y, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexities() {
        assert_eq!(complexity(SurfaceKind::S11), 1);
        assert_eq!(complexity(SurfaceKind::S04), 1);
        assert_eq!(complexity(SurfaceKind::S05), 2);
    }

    #[test]
    fn parse_names() {
        assert_eq!("0,5".parse::<SurfaceKind>().unwrap(), SurfaceKind::S05);
        assert_eq!(" 1, 1".parse::<SurfaceKind>().unwrap(), SurfaceKind::S11);
        assert!("2,0".parse::<SurfaceKind>().is_err());
        assert!("05".parse::<SurfaceKind>().is_err());
    }

    #[test]
    fn euler_characteristic_of_components() {
        // S_{0,5} cut along one curve: S_{0,4} and a pair of pants.
        let s = SurfaceKind::S05;
        let parts = [SurfaceKind { genus: 0, punctures: 4 }, SurfaceKind { genus: 0, punctures: 3 }];
        let sum: i64 = parts.iter().map(|p| p.euler_characteristic()).sum();
        assert_eq!(sum, s.euler_characteristic());
        assert!(parts[1].is_pants());
    }
}
