//! JSON file schemas for curves, markings and marking sequences.
//!
//! Curves are written as `{surface, triangulation, coords}`. On the Farey
//! surfaces the triangulation is `farey` and `coords` is `[p, q]`; on
//! `S_{0,5}` it is `standard` and `coords` are normal coordinates.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::curves::{CurveSystem, SphereCurves};
use crate::error::{Error, Result};
use crate::farey::Slope;
use crate::markings::{AugmentedMarking, BallGraph, MarkedCurve, MarkingRecord, Move};
use crate::regions::ScalingSequence;
use crate::surface::SurfaceKind;

/// Schema version written into every file.
pub const SCHEMA_VERSION: u32 = 1;

/// Env var naming the fixture directory.
pub const FIXTURES_ENV: &str = "AMC_FIXTURES";

/// Bundled fixture directory, unless overridden by `AMC_FIXTURES`.
pub fn fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("fixtures"))
}

/// A path as given, or else the same name inside the fixture directory.
pub fn resolve(name: &Path) -> Result<PathBuf> {
    if name.exists() {
        return Ok(name.to_path_buf());
    }
    let inside = fixture_dir().join(name);
    if inside.exists() {
        Ok(inside)
    } else {
        Err(Error::Io(format!("fixture not found: {}", name.display())))
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(resolve(path)?)?;
    Ok(serde_json::from_str(&text)?)
}

/// Whole-file atomic write of pretty JSON.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

/// Whole-file atomic write.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text)?;
    Ok(std::fs::rename(&tmp, path)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Triangulation {
    Farey,
    Standard,
}

impl Triangulation {
    pub fn for_kind(kind: SurfaceKind) -> Self {
        if kind == SurfaceKind::S05 {
            Triangulation::Standard
        } else {
            Triangulation::Farey
        }
    }
}

/// Conversion between a curve type and its coordinate list.
pub trait Coords: Sized {
    fn from_coords(kind: SurfaceKind, coords: &[i64]) -> Result<Self>;
    fn to_coords(&self) -> Vec<i64>;
}

impl Coords for Slope {
    fn from_coords(kind: SurfaceKind, coords: &[i64]) -> Result<Self> {
        if kind == SurfaceKind::S05 {
            return Err(Error::Format("slopes live on S_{1,1} and S_{0,4}".into()));
        }
        match coords {
            [p, q] => Slope::new(*p, *q),
            _ => Err(Error::Format("a slope has two coordinates".into())),
        }
    }

    fn to_coords(&self) -> Vec<i64> {
        vec![self.p(), self.q()]
    }
}

impl Coords for CurveSystem {
    fn from_coords(kind: SurfaceKind, coords: &[i64]) -> Result<Self> {
        let eng = SphereCurves::for_kind(kind)?;
        let c = CurveSystem::from_coords(coords.to_vec());
        eng.validate(&c)?;
        Ok(c)
    }

    fn to_coords(&self) -> Vec<i64> {
        self.coords().to_vec()
    }
}

mod surface_name {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::surface::SurfaceKind;

    pub fn serialize<S: Serializer>(k: &SurfaceKind, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(k)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SurfaceKind, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_header(kind: SurfaceKind, tri: Triangulation) -> Result<()> {
    if tri != Triangulation::for_kind(kind) {
        return Err(Error::Format(format!("triangulation {tri:?} does not belong to S_{{{kind}}}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    #[serde(with = "surface_name")]
    pub surface: SurfaceKind,
    pub triangulation: Triangulation,
    pub coords: Vec<i64>,
}

impl CurveFile {
    pub fn new<C: Coords>(kind: SurfaceKind, c: &C) -> Self {
        CurveFile { surface: kind, triangulation: Triangulation::for_kind(kind), coords: c.to_coords() }
    }

    pub fn curve<C: Coords>(&self) -> Result<C> {
        check_header(self.surface, self.triangulation)?;
        C::from_coords(self.surface, &self.coords)
    }
}

/// Marking record with curves as coordinate lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingBody {
    pub base: Vec<Vec<i64>>,
    pub transversals: Vec<Vec<i64>>,
    pub depth: Vec<(Vec<i64>, u32)>,
}

impl MarkingBody {
    pub fn new<C: Coords + Ord + Clone>(m: &AugmentedMarking<C>) -> Self {
        let rec = MarkingRecord::from(m);
        MarkingBody {
            base: rec.base.iter().map(Coords::to_coords).collect(),
            transversals: rec.transversals.iter().map(Coords::to_coords).collect(),
            depth: rec.depth.iter().map(|(c, d)| (c.to_coords(), *d)).collect(),
        }
    }

    pub fn record<C: Coords>(&self, kind: SurfaceKind) -> Result<MarkingRecord<C>> {
        let conv = |v: &Vec<i64>| C::from_coords(kind, v);
        Ok(MarkingRecord {
            base: self.base.iter().map(conv).collect::<Result<_>>()?,
            transversals: self.transversals.iter().map(conv).collect::<Result<_>>()?,
            depth: self.depth.iter().map(|(c, d)| Ok((conv(c)?, *d))).collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingFile {
    pub schema: u32,
    #[serde(with = "surface_name")]
    pub surface: SurfaceKind,
    pub triangulation: Triangulation,
    pub marking: MarkingBody,
}

impl MarkingFile {
    pub fn new<C: Coords + Ord + Clone>(kind: SurfaceKind, m: &AugmentedMarking<C>) -> Self {
        MarkingFile {
            schema: SCHEMA_VERSION,
            surface: kind,
            triangulation: Triangulation::for_kind(kind),
            marking: MarkingBody::new(m),
        }
    }

    pub fn record<C: Coords>(&self) -> Result<MarkingRecord<C>> {
        check_header(self.surface, self.triangulation)?;
        self.marking.record(self.surface)
    }
}

/// Scaling sequence by name or by value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScaleSpec {
    /// `lin` (`s_n = n`) or `quad` (`s_n = n^2`), `n` from 1.
    Named(String),
    Values(Vec<u64>),
}

impl ScaleSpec {
    /// The sequence for `len` markings; explicit values must have that length.
    pub fn build(&self, len: usize) -> Result<ScalingSequence> {
        match self {
            ScaleSpec::Named(s) if s == "lin" => ScalingSequence::linear(len),
            ScaleSpec::Named(s) if s == "quad" => ScalingSequence::quadratic(len),
            ScaleSpec::Named(s) => Err(Error::Format(format!("unknown scale {s:?} (lin or quad)"))),
            ScaleSpec::Values(v) if v.len() != len => Err(Error::LengthMismatch(v.len(), len)),
            ScaleSpec::Values(v) => v.clone().try_into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub schema: u32,
    #[serde(with = "surface_name")]
    pub surface: SurfaceKind,
    pub triangulation: Triangulation,
    pub markings: Vec<MarkingBody>,
    pub scale: ScaleSpec,
}

impl SequenceFile {
    pub fn new<C: Coords + Ord + Clone>(kind: SurfaceKind, ms: &[AugmentedMarking<C>], scale: ScaleSpec) -> Self {
        SequenceFile {
            schema: SCHEMA_VERSION,
            surface: kind,
            triangulation: Triangulation::for_kind(kind),
            markings: ms.iter().map(MarkingBody::new).collect(),
            scale,
        }
    }

    pub fn records<C: Coords>(&self) -> Result<Vec<MarkingRecord<C>>> {
        check_header(self.surface, self.triangulation)?;
        self.markings.iter().map(|m| m.record(self.surface)).collect()
    }
}

/// One marked curve with curves as coordinate lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCoords {
    pub base: Vec<i64>,
    pub transversal: Vec<i64>,
    pub depth: u32,
}

/// A generated ball: canonical vertex order, depths and labelled edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallFile {
    pub schema: u32,
    #[serde(with = "surface_name")]
    pub surface: SurfaceKind,
    pub triangulation: Triangulation,
    pub radius: u32,
    pub center: u32,
    pub vertices: Vec<Vec<PairCoords>>,
    pub depth: Vec<u32>,
    pub adjacency: Vec<Vec<(u32, Move)>>,
}

impl BallFile {
    pub fn new<C: Coords + Ord + Clone>(kind: SurfaceKind, g: &BallGraph<C>) -> Self {
        BallFile {
            schema: SCHEMA_VERSION,
            surface: kind,
            triangulation: Triangulation::for_kind(kind),
            radius: g.radius,
            center: g.center,
            vertices: g
                .vertices
                .iter()
                .map(|m| {
                    m.pairs()
                        .iter()
                        .map(|p| PairCoords {
                            base: p.base.to_coords(),
                            transversal: p.transversal.to_coords(),
                            depth: p.depth,
                        })
                        .collect()
                })
                .collect(),
            depth: g.depth.clone(),
            adjacency: g.adjacency.clone(),
        }
    }

    /// Rebuilds the graph; vertices must already be in canonical order.
    pub fn graph<C: Coords + Ord + Clone>(&self) -> Result<BallGraph<C>> {
        check_header(self.surface, self.triangulation)?;
        let vertices: Vec<AugmentedMarking<C>> = self
            .vertices
            .iter()
            .map(|pairs| {
                let pairs = pairs
                    .iter()
                    .map(|p| {
                        Ok(MarkedCurve {
                            base: C::from_coords(self.surface, &p.base)?,
                            transversal: C::from_coords(self.surface, &p.transversal)?,
                            depth: p.depth,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                AugmentedMarking::from_pairs(pairs)
            })
            .collect::<Result<_>>()?;
        let n = vertices.len();
        if self.depth.len() != n || self.adjacency.len() != n || self.center as usize >= n {
            return Err(Error::Format("ball tables have inconsistent lengths".into()));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("ball vertices are not in canonical order".into()));
        }
        if self.adjacency.iter().flatten().any(|&(v, _)| v as usize >= n) {
            return Err(Error::Format("edge to a missing vertex".into()));
        }
        Ok(BallGraph {
            radius: self.radius,
            center: self.center,
            vertices,
            depth: self.depth.clone(),
            adjacency: self.adjacency.clone(),
        })
    }
}
