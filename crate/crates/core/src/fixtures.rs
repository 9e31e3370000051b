//! Standard base markings, balls and seeded curve samples.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::curves::word::HalfTwist;
use crate::curves::{CurveSystem, SphereCurves};
use crate::error::Result;
use crate::farey;
use crate::markings::{AugmentedMarking, BallGraph, Caps, FareyModel, MarkedCurve, SphereModel};
use crate::regions::pants_marking;
use crate::surface::SurfaceKind;

/// Base marking `(inf, 0)` at depth zero on a Farey surface.
pub fn farey_base() -> AugmentedMarking<farey::Slope> {
    AugmentedMarking::from_pairs(vec![MarkedCurve { base: farey::INFINITY, transversal: farey::ZERO, depth: 0 }])
        .expect("one pair")
}

/// Base marking on `S_{0,5}`: round curves 1 and 3 with twist-zero transversals.
pub fn sphere_base(model: &SphereModel) -> Result<AugmentedMarking<CurveSystem>> {
    let eng = model.atlas().engine();
    pants_marking(model, &[eng.round_curve(1).clone(), eng.round_curve(3).clone()])
}

/// Radius and twist cap of a standard ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallSpec {
    pub surface: SurfaceKind,
    pub radius: u32,
    pub max_twist: Option<u32>,
}

impl BallSpec {
    /// The balls compared against the distance formula.
    pub fn standard() -> [BallSpec; 3] {
        [
            BallSpec { surface: SurfaceKind::S04, radius: 8, max_twist: None },
            BallSpec { surface: SurfaceKind::S11, radius: 8, max_twist: None },
            BallSpec { surface: SurfaceKind::S05, radius: 6, max_twist: Some(8) },
        ]
    }

    pub fn caps(&self, budget_vertices: usize) -> Caps {
        Caps { max_twist: self.max_twist, budget_vertices }
    }
}

/// A generated ball on either model family.
pub enum AnyBall {
    Farey(FareyModel, BallGraph<farey::Slope>),
    Sphere(SphereModel, BallGraph<CurveSystem>),
}

impl AnyBall {
    pub fn generate(spec: &BallSpec, budget_vertices: usize) -> Result<Self> {
        let caps = spec.caps(budget_vertices);
        if spec.surface == SurfaceKind::S05 {
            let model = SphereModel::new()?;
            let g = BallGraph::generate(&model, &sphere_base(&model)?, spec.radius, &caps)?;
            Ok(AnyBall::Sphere(model, g))
        } else {
            let model = FareyModel::new(spec.surface)?;
            let g = BallGraph::generate(&model, &farey_base(), spec.radius, &caps)?;
            Ok(AnyBall::Farey(model, g))
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyBall::Farey(_, g) => g.len(),
            AnyBall::Sphere(_, g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edge_count(&self) -> usize {
        match self {
            AnyBall::Farey(_, g) => g.edge_count(),
            AnyBall::Sphere(_, g) => g.edge_count(),
        }
    }
}

/// A curve of `S_{0,5}`: a random round curve moved by a random word of
/// `len` half twists.
pub fn random_sphere_curve(eng: &SphereCurves, rng: &mut impl Rng, len: usize) -> CurveSystem {
    let n = eng.finite_punctures();
    let j = rng.gen_range(0..=n);
    let word: Vec<HalfTwist> =
        (0..len).map(|_| HalfTwist::new(rng.gen_range(1..=n as u8), rng.gen_bool(0.5))).collect();
    eng.from_round(j, &word)
}

/// A slope with `|p|, q <= max`.
pub fn random_slope(rng: &mut impl Rng, max: i64) -> farey::Slope {
    loop {
        let p = rng.gen_range(-max..=max);
        let q = rng.gen_range(0..=max);
        if let Ok(s) = farey::Slope::new(p, q) {
            return s;
        }
    }
}

/// Length of the bundled marking sequences.
pub const SEQUENCE_LEN: usize = 12;

/// The base marking repeated.
pub fn constant_sequence(model: &SphereModel, len: usize) -> Result<Vec<AugmentedMarking<CurveSystem>>> {
    Ok(vec![sphere_base(model)?; len])
}

/// `D = n^2` on the first base curve at index `n - 1`.
pub fn quadratic_sequence(model: &SphereModel, len: usize) -> Result<Vec<AugmentedMarking<CurveSystem>>> {
    let base = sphere_base(model)?;
    (1..=len as u32).map(|n| base.with_depths(&[n * n, 0])).collect()
}

/// `D = n` on both base curves at index `n - 1`.
pub fn two_track_sequence(model: &SphereModel, len: usize) -> Result<Vec<AugmentedMarking<CurveSystem>>> {
    let base = sphere_base(model)?;
    (1..=len as u32).map(|n| base.with_depths(&[n, n])).collect()
}

/// Every bundled fixture file as `(file name, JSON)`.
pub fn bundled() -> Result<Vec<(String, serde_json::Value)>> {
    use crate::io::{CurveFile, MarkingFile, ScaleSpec, SequenceFile};
    let model = SphereModel::new()?;
    let eng = model.atlas().engine();
    let mut out = Vec::new();
    let mut push = |name: &str, v: serde_json::Result<serde_json::Value>| -> Result<()> {
        out.push((name.to_string(), v?));
        Ok(())
    };
    for (name, kind) in [("s11", SurfaceKind::S11), ("s04", SurfaceKind::S04)] {
        push(&format!("{name}_base.json"), serde_json::to_value(MarkingFile::new(kind, &farey_base())))?;
    }
    push("s05_base.json", serde_json::to_value(MarkingFile::new(SurfaceKind::S05, &sphere_base(&model)?)))?;
    for j in 0..=eng.finite_punctures() {
        push(
            &format!("s05_round{j}.json"),
            serde_json::to_value(CurveFile::new(SurfaceKind::S05, eng.round_curve(j))),
        )?;
    }
    let lin = || ScaleSpec::Named("lin".into());
    let seqs = [
        ("seq_constant.json", constant_sequence(&model, SEQUENCE_LEN)?),
        ("seq_quadratic.json", quadratic_sequence(&model, SEQUENCE_LEN)?),
        ("seq_two_tracks.json", two_track_sequence(&model, SEQUENCE_LEN)?),
    ];
    for (name, ms) in seqs {
        push(name, serde_json::to_value(SequenceFile::new(SurfaceKind::S05, &ms, lin())))?;
    }
    Ok(out)
}
