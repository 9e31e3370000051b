//! Subsurface projections of curves on `S_{0,4}` and `S_{0,5}`.
//!
//! A four-holed sphere piece is moved to the standard piece by the
//! reduction word of its boundary and read in the [`FareyChart`]. The
//! annular coordinate about a core `a` is read in the fixed auxiliary piece
//! bounded by `w_a(round curve 3)`, where `w_a` is the reduction word of `a`;
//! its reference transversal is the reference Farey neighbor there.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::chart::FareyChart;
use super::engine::SphereCurves;
use super::word::{inverse_word, HalfTwist};
use super::CurveSystem;
use crate::error::{Error, Result};
use crate::farey::{self, Slope};
use crate::surface::{IntersectionOracle, Subsurface, SurfaceKind};

/// Saturation value of curve graph distances on `S_{0,5}`.
pub const CURVE_GRAPH_CAP: u64 = 3;

/// A four-holed sphere piece with its Farey chart.
#[derive(Debug, Clone)]
pub struct Piece {
    boundary: Option<CurveSystem>,
    word: Arc<[HalfTwist]>,
    chart: &'static FareyChart,
}

impl Piece {
    /// The S_{0,4} side of `boundary`, or the whole surface of `S_{0,4}`.
    pub fn new(chart: &'static FareyChart, boundary: Option<&CurveSystem>) -> Result<Self> {
        let eng = chart.engine();
        match (eng.finite_punctures(), boundary) {
            (3, None) => Ok(Piece { boundary: None, word: Arc::from(Vec::new()), chart }),
            (4, Some(d)) => {
                eng.validate(d)?;
                Ok(Piece { boundary: Some(d.clone()), word: eng.reduction(d)?, chart })
            }
            _ => Err(Error::Precondition("piece boundary does not match the surface".into())),
        }
    }

    pub fn boundary(&self) -> Option<&CurveSystem> {
        self.boundary.as_ref()
    }

    fn to_chart(&self, x: &CurveSystem) -> CurveSystem {
        self.chart.engine().apply_word(&inverse_word(&self.word), x)
    }

    /// The curve of slope `s`.
    pub fn curve(&self, s: Slope) -> CurveSystem {
        self.chart.engine().apply_word(&self.word, &self.chart.curve(s))
    }

    /// Farey projection of `x`; empty when `x` misses the piece.
    pub fn support(&self, x: &CurveSystem) -> Result<Vec<Slope>> {
        self.chart.support(&self.to_chart(x))
    }

    /// Slope of a curve contained in the piece.
    pub fn slope_of(&self, z: &CurveSystem) -> Result<Slope> {
        self.chart.slope_of(&self.to_chart(z))
    }

    /// Whether `z` is a curve of the piece (not its boundary).
    pub fn contains(&self, z: &CurveSystem) -> bool {
        match &self.boundary {
            None => true,
            Some(d) => z != d && self.chart.engine().intersection(z, d).map(|i| i == 0).unwrap_or(false),
        }
    }
}

/// Annular coordinate frame about a core curve.
#[derive(Debug, Clone)]
pub struct AnnulusFrame {
    core: CurveSystem,
    aux: Piece,
    sigma: Slope,
    reference: Slope,
}

impl AnnulusFrame {
    pub fn core(&self) -> &CurveSystem {
        &self.core
    }

    /// Piece in which the coordinate is read.
    pub fn aux_piece(&self) -> &Piece {
        &self.aux
    }

    /// Slope of the core in the auxiliary piece.
    pub fn core_slope(&self) -> Slope {
        self.sigma
    }

    /// The stored reference transversal, of twist 0.
    pub fn reference_transversal(&self) -> CurveSystem {
        self.aux.curve(self.reference)
    }

    /// Twist of `x` about the core, the least twist over its projection.
    pub fn twist(&self, x: &CurveSystem) -> Result<i64> {
        let support = self.aux.support(x)?;
        support
            .into_iter()
            .filter(|&p| p != self.sigma)
            .map(|p| farey::twist_coordinate(self.sigma, p, self.reference))
            .collect::<Result<Vec<i64>>>()?
            .into_iter()
            .min()
            .ok_or(Error::EmptyProjection)
    }
}

/// Result of projecting a curve to a subsurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveProjection {
    Empty,
    Simplex(Vec<CurveSystem>),
    Twist(i64),
}

/// Charts, projection frames and their caches for one surface.
#[derive(Debug)]
pub struct Atlas {
    chart: &'static FareyChart,
    frames: RwLock<HashMap<CurveSystem, Arc<AnnulusFrame>>>,
    pieces: RwLock<HashMap<CurveSystem, Arc<Piece>>>,
    supports: Memo<(CurveSystem, CurveSystem), Vec<Slope>>,
    twists: Memo<(CurveSystem, CurveSystem), i64>,
    meets: Memo<(CurveSystem, CurveSystem), u64>,
    graph: Memo<(CurveSystem, CurveSystem), u64>,
}

/// A read-mostly memo table.
#[derive(Debug)]
struct Memo<K, V>(RwLock<HashMap<K, V>>);

impl<K, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo(RwLock::default())
    }
}

impl<K: std::hash::Hash + Eq, V: Clone> Memo<K, V> {
    fn get_or(&self, key: K, f: impl FnOnce() -> Result<V>) -> Result<V> {
        if let Some(v) = self.0.read().expect("lock").get(&key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.0.write().expect("lock").insert(key, v.clone());
        Ok(v)
    }
}

impl Atlas {
    pub fn for_kind(kind: SurfaceKind) -> Result<&'static Atlas> {
        static S04: OnceLock<Atlas> = OnceLock::new();
        static S05: OnceLock<Atlas> = OnceLock::new();
        let cell = match kind {
            SurfaceKind::S04 => &S04,
            SurfaceKind::S05 => &S05,
            other => return Err(Error::UnsupportedSurface { genus: other.genus, punctures: other.punctures }),
        };
        let chart = FareyChart::for_kind(kind)?;
        Ok(cell.get_or_init(|| Atlas {
            chart,
            frames: RwLock::default(),
            pieces: RwLock::default(),
            supports: Memo::default(),
            twists: Memo::default(),
            meets: Memo::default(),
            graph: Memo::default(),
        }))
    }

    pub fn engine(&self) -> &'static SphereCurves {
        self.chart.engine()
    }

    pub fn chart(&self) -> &'static FareyChart {
        self.chart
    }

    /// The four-holed sphere piece bounded by `boundary` (or the whole `S_{0,4}`).
    pub fn piece(&self, boundary: Option<&CurveSystem>) -> Result<Arc<Piece>> {
        let Some(d) = boundary else {
            return Ok(Arc::new(Piece::new(self.chart, None)?));
        };
        if let Some(p) = self.pieces.read().expect("lock").get(d) {
            return Ok(p.clone());
        }
        let p = Arc::new(Piece::new(self.chart, Some(d))?);
        self.pieces.write().expect("lock").insert(d.clone(), p.clone());
        Ok(p)
    }

    /// The piece a curve of this surface lives in: the whole `S_{0,4}`, or
    /// on `S_{0,5}` the piece bounded by `w_a(round curve 3)`.
    fn aux_piece(&self, core: &CurveSystem) -> Result<Arc<Piece>> {
        let eng = self.engine();
        if eng.finite_punctures() == 3 {
            return self.piece(None);
        }
        let w = eng.reduction(core)?;
        let d = eng.from_round(3, &w);
        self.piece(Some(&d))
    }

    pub fn annulus(&self, core: &CurveSystem) -> Result<Arc<AnnulusFrame>> {
        if let Some(f) = self.frames.read().expect("lock").get(core) {
            return Ok(f.clone());
        }
        self.engine().validate(core)?;
        let aux = (*self.aux_piece(core)?).clone();
        let sigma = aux.slope_of(core)?;
        let frame =
            Arc::new(AnnulusFrame { core: core.clone(), aux, sigma, reference: farey::reference_neighbor(sigma) });
        self.frames.write().expect("lock").insert(core.clone(), frame.clone());
        Ok(frame)
    }

    /// Memoised intersection number.
    pub fn intersection(&self, a: &CurveSystem, b: &CurveSystem) -> Result<u64> {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.meets.get_or(key, || self.engine().intersection(a, b))
    }

    /// Memoised Farey projection of `x` to the piece bounded by `boundary`.
    pub fn support(&self, boundary: &CurveSystem, x: &CurveSystem) -> Result<Vec<Slope>> {
        self.supports.get_or((boundary.clone(), x.clone()), || self.piece(Some(boundary))?.support(x))
    }

    /// Memoised annular coordinate of `x` about `core`.
    pub fn twist(&self, core: &CurveSystem, x: &CurveSystem) -> Result<i64> {
        self.twists.get_or((core.clone(), x.clone()), || self.annulus(core)?.twist(x))
    }

    /// Projection of `a` to `y`.
    pub fn project(&self, a: &CurveSystem, y: &Subsurface<CurveSystem>) -> Result<CurveProjection> {
        let eng = self.engine();
        eng.validate(a)?;
        match y {
            Subsurface::Whole => Ok(CurveProjection::Simplex(vec![a.clone()])),
            Subsurface::Annulus(core) => {
                if eng.intersection(a, core)? == 0 {
                    return Ok(CurveProjection::Empty);
                }
                Ok(CurveProjection::Twist(self.annulus(core)?.twist(a)?))
            }
            Subsurface::Piece { boundary, component } => {
                if *component != 0 || boundary.len() != 1 || eng.finite_punctures() != 4 {
                    return Err(Error::PantsTarget);
                }
                let piece = self.piece(Some(&boundary[0]))?;
                let support = piece.support(a)?;
                Ok(if support.is_empty() {
                    CurveProjection::Empty
                } else {
                    CurveProjection::Simplex(support.into_iter().map(|s| piece.curve(s)).collect())
                })
            }
        }
    }

    /// Distance in the curve graph of the whole surface, saturated at
    /// [`CURVE_GRAPH_CAP`] on `S_{0,5}`; exact Farey distance on `S_{0,4}`.
    pub fn curve_graph_dist(&self, a: &CurveSystem, b: &CurveSystem) -> Result<u64> {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.graph.get_or(key, || self.curve_graph_dist_uncached(a, b))
    }

    fn curve_graph_dist_uncached(&self, a: &CurveSystem, b: &CurveSystem) -> Result<u64> {
        let eng = self.engine();
        if eng.finite_punctures() == 3 {
            let piece = self.piece(None)?;
            return Ok(farey::cc_dist(piece.slope_of(a)?, piece.slope_of(b)?));
        }
        if a == b {
            return Ok(0);
        }
        if self.intersection(a, b)? == 0 {
            return Ok(1);
        }
        // Distance 2 iff the arcs of b in the S_{0,4} side of a have one type.
        let support = self.piece(Some(a))?.support(b)?;
        Ok(if support.len() == 1 { 2 } else { CURVE_GRAPH_CAP })
    }
}

impl IntersectionOracle for Atlas {
    type Curve = CurveSystem;

    fn surface(&self) -> SurfaceKind {
        self.engine().surface()
    }

    fn intersection(&self, a: &CurveSystem, b: &CurveSystem) -> u64 {
        Atlas::intersection(self, a, b).expect("curves are validated before comparison")
    }
}
