//! Frozen measured constants and the regression checks that recompute them.
//!
//! Every constant here was produced by `measure` and is compared against a
//! fresh measurement by `check`. Exact quantities must match exactly; fitted
//! reals match within `REAL_TOLERANCE`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::experiments::{self, QiReport};
use crate::fixtures::{farey_base, sphere_base, AnyBall, BallSpec};
use crate::horoball;
use crate::markings::{BallGraph, Caps, FareyModel, SphereModel, SurfaceModel};
use crate::surface::SurfaceKind;

/// Relative tolerance on fitted real constants.
pub const REAL_TOLERANCE: f64 = 1e-6;

/// Env var overriding the baseline file location.
pub const BASELINES_ENV: &str = "AMC_BASELINES";

/// Sweep sizes and seeds shared by `measure` and `check`.
pub mod plan {
    pub const EST_MAX_DX: i64 = 1024;
    pub const EST_MAX_M: u32 = 10;
    pub const HYP_SEED: u64 = 7;
    pub const HYP_PAIRS: usize = 10_000;
    pub const HYP_MAX_X: i64 = 1024;
    pub const HYP_MAX_M: u32 = 10;
    pub const TWIST_SEED: u64 = 7;
    pub const TWIST_PAIRS: usize = 1_000;
    pub const TWIST_MAX_ENTRY: i64 = 1_000;
    pub const FIT_K_MAX: i64 = 4;
    pub const BEHRSTOCK_SEED: u64 = 7;
    pub const BEHRSTOCK_SAMPLES: usize = 10_000;
    pub const BGIT_SEED: u64 = 7;
    pub const BGIT_SAMPLES: usize = 1_000;
    pub const BGIT_MAX_ENTRY: i64 = 1_000;
    pub const ORTHANT_MAX_DEPTH: i64 = 3;
    pub const ORTHANT_MAX_TWIST: u32 = 8;
    pub const SMALL_BALL_RADIUS: u32 = 6;
    pub const BUDGET_VERTICES: usize = 2_000_000;
    pub const THICK_SEED: u64 = 7;
    pub const THICK_PAIRS: usize = 100;
    pub const THICK_R: u64 = 50;
    pub const THICK_WORD_LEN: usize = 8;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoroballBaseline {
    /// `max(dist_estimate - dist_exact)`.
    pub c_est: i64,
    pub hyp_k: f64,
    pub hyp_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaBaseline {
    pub ball: BallSpec,
    pub vertices: usize,
    pub edges: usize,
    pub pairs: usize,
    /// `K'`; the fit is taken at `K' + 1`.
    pub k_min: i64,
    pub k_qi: f64,
    pub c_qi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionBaseline {
    pub ball: BallSpec,
    /// Indices into the center's base.
    pub delta: Vec<usize>,
    pub members: usize,
    pub pairs: usize,
    pub k_qi: f64,
    pub c_qi: f64,
    pub cross_max: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Baselines {
    pub horoball: HoroballBaseline,
    /// Extremes of `annular model - |twist difference|`.
    pub twist_excess: (i64, i64),
    /// Vertex and edge counts of the radius-6 ball about the `S_{0,4}` base.
    pub s04_ball6: (usize, usize),
    /// Largest AM(Y) jump of a projection across one edge of the `S_{0,5}` ball.
    pub projection_lipschitz: i64,
    /// Largest `d_Y(m, m)` over ball markings and their domains.
    pub projection_diameter: i64,
    pub distance_formula: Vec<FormulaBaseline>,
    /// `M_1`.
    pub behrstock: i64,
    /// `M_0`, twist and horoball versions.
    pub bgit: (i64, i64),
    pub regions: Vec<RegionBaseline>,
    /// Orthant pairs checked, all satisfying the l1 law.
    pub orthant_pairs: usize,
    /// Longest chain and least witness diameter over the seeded pairs.
    pub thickness: (usize, u64),
}

impl Baselines {
    pub fn default_path() -> PathBuf {
        std::env::var_os(BASELINES_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("baselines.json"))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::MissingBaseline(format!("{}: {e}", path.display())))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Whole-file atomic write.
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text + "\n")?;
        Ok(std::fs::rename(&tmp, path)?)
    }
}

/// Outcome of one regression check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub frozen: Value,
    pub measured: Value,
    pub pass: bool,
}

/// Names accepted by `check`.
pub const CHECKS: [&str; 11] = [
    "horoball-estimate",
    "horodisk-fit",
    "twist-coordinate",
    "ball-s04-r6",
    "projection",
    "distance-formula",
    "behrstock",
    "bgit",
    "regions",
    "orthant",
    "thickness",
];

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REAL_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

fn measure_horoball() -> Result<HoroballBaseline> {
    let est = experiments::horoball_estimate_sweep(plan::EST_MAX_DX, plan::EST_MAX_M)?;
    let pairs = horoball::sample_pairs(plan::HYP_SEED, plan::HYP_PAIRS, plan::HYP_MAX_X, plan::HYP_MAX_M);
    let fit = horoball::hyp_compare(&pairs)?;
    Ok(HoroballBaseline { c_est: est.max_gap, hyp_k: fit.k_mult, hyp_c: fit.c_add })
}

fn measure_twist() -> Result<(i64, i64)> {
    let r = experiments::twist_qi_sweep(plan::TWIST_SEED, plan::TWIST_PAIRS, plan::TWIST_MAX_ENTRY)?;
    Ok((r.min_excess, r.max_excess))
}

fn measure_s04_ball6() -> Result<(usize, usize)> {
    let model = FareyModel::new(SurfaceKind::S04)?;
    let g = BallGraph::generate(&model, &farey_base(), plan::SMALL_BALL_RADIUS, &Caps::default())?;
    Ok((g.len(), g.edge_count()))
}

fn sphere_ball(model: &SphereModel) -> Result<BallGraph<crate::curves::CurveSystem>> {
    let spec = BallSpec::standard()[2];
    BallGraph::generate(model, &sphere_base(model)?, spec.radius, &spec.caps(plan::BUDGET_VERTICES))
}

fn self_diameter<M: SurfaceModel>(model: &M, ball: &BallGraph<M::Curve>) -> Result<i64> {
    use rayon::prelude::*;
    let per: Vec<i64> = ball
        .vertices
        .par_iter()
        .map(|m| {
            let mut worst = 0;
            for y in model.domains(&m.base()) {
                worst = worst.max(crate::coarse::proj_dist(model, m, m, &y, crate::coarse::Variant::Augmented)?);
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().max().unwrap_or(0))
}

fn measure_projection() -> Result<(i64, i64)> {
    let model = SphereModel::new()?;
    let ball = sphere_ball(&model)?;
    let lip = experiments::projection_lipschitz(&model, &ball)?;
    let mut diam = self_diameter(&model, &ball)?;
    for spec in &BallSpec::standard()[..2] {
        let fm = FareyModel::new(spec.surface)?;
        let g = BallGraph::generate(&fm, &farey_base(), plan::SMALL_BALL_RADIUS, &Caps::default())?;
        diam = diam.max(self_diameter(&fm, &g)?);
    }
    Ok((lip, diam))
}

fn formula_from_sweep(ball: BallSpec, reports: &[QiReport]) -> Result<FormulaBaseline> {
    let k_min = experiments::minimal_threshold(reports)
        .ok_or_else(|| Error::Degenerate("the fit does not stabilize within the threshold sweep".into()))?;
    let r = reports
        .iter()
        .find(|r| r.k == k_min + 1)
        .ok_or_else(|| Error::Degenerate("stable threshold outside the sweep".into()))?;
    Ok(FormulaBaseline {
        ball,
        vertices: r.vertices,
        edges: r.edges,
        pairs: r.pairs,
        k_min,
        k_qi: r.fit.k,
        c_qi: r.fit.c,
    })
}

/// Threshold sweep and fit on one standard ball.
pub fn measure_formula(spec: BallSpec) -> Result<FormulaBaseline> {
    let reports = match AnyBall::generate(&spec, plan::BUDGET_VERTICES)? {
        AnyBall::Farey(m, g) => experiments::threshold_sweep(&m, &g, plan::FIT_K_MAX)?,
        AnyBall::Sphere(m, g) => experiments::threshold_sweep(&m, &g, plan::FIT_K_MAX)?,
    };
    formula_from_sweep(spec, &reports)
}

/// Fit at a frozen threshold, for regression.
pub fn refit_formula(frozen: &FormulaBaseline) -> Result<FormulaBaseline> {
    let k = frozen.k_min + 1;
    let r = match AnyBall::generate(&frozen.ball, plan::BUDGET_VERTICES)? {
        AnyBall::Farey(m, g) => experiments::qi_report(&m, &g, k, frozen.k_min)?,
        AnyBall::Sphere(m, g) => experiments::qi_report(&m, &g, k, frozen.k_min)?,
    };
    Ok(FormulaBaseline {
        ball: frozen.ball,
        vertices: r.vertices,
        edges: r.edges,
        pairs: r.pairs,
        k_min: frozen.k_min,
        k_qi: r.fit.k,
        c_qi: r.fit.c,
    })
}

fn measure_behrstock() -> Result<i64> {
    let model = SphereModel::new()?;
    let ball = sphere_ball(&model)?;
    Ok(experiments::behrstock_sweep(&model, &ball, plan::BEHRSTOCK_SEED, plan::BEHRSTOCK_SAMPLES)?.max)
}

fn measure_bgit() -> Result<(i64, i64)> {
    let r = experiments::bgit_sweep(
        &FareyModel::new(SurfaceKind::S11)?,
        plan::BGIT_SEED,
        plan::BGIT_SAMPLES,
        plan::BGIT_MAX_ENTRY,
    )?;
    Ok((r.max_twist_diam, r.max_horoball_diam))
}

/// Product regions of the standard balls: each single base curve of the
/// center, and the whole base on `S_{0,5}`.
pub fn measure_regions() -> Result<Vec<RegionBaseline>> {
    let mut out = Vec::new();
    for spec in BallSpec::standard() {
        let ball = AnyBall::generate(&spec, plan::BUDGET_VERTICES)?;
        let deltas: Vec<Vec<usize>> = match &ball {
            AnyBall::Farey(..) => vec![vec![0]],
            AnyBall::Sphere(..) => vec![vec![0], vec![1], vec![0, 1]],
        };
        for delta in deltas {
            let (members, pairs, fit, cross_max) = match &ball {
                AnyBall::Farey(m, g) => {
                    let base = g.vertices[g.center as usize].base();
                    let d: Vec<_> = delta.iter().map(|&i| base[i]).collect();
                    let r = experiments::region_report(m, g, &d)?;
                    (r.members, r.pairs, r.fit, r.cross_max)
                }
                AnyBall::Sphere(m, g) => {
                    let base = g.vertices[g.center as usize].base();
                    let d: Vec<_> = delta.iter().map(|&i| base[i].clone()).collect();
                    let r = experiments::region_report(m, g, &d)?;
                    (r.members, r.pairs, r.fit, r.cross_max)
                }
            };
            out.push(RegionBaseline { ball: spec, delta, members, pairs, k_qi: fit.k, c_qi: fit.c, cross_max });
        }
    }
    Ok(out)
}

fn measure_orthant() -> Result<usize> {
    let r = experiments::orthant_check(&SphereModel::new()?, plan::ORTHANT_MAX_DEPTH, plan::ORTHANT_MAX_TWIST)?;
    if !r.failures.is_empty() {
        return Err(Error::Degenerate(format!("orthant law fails on {} pairs", r.failures.len())));
    }
    Ok(r.pairs)
}

fn measure_thickness() -> Result<(usize, u64)> {
    let r = experiments::thickness_sweep(
        &SphereModel::new()?,
        plan::THICK_SEED,
        plan::THICK_PAIRS,
        plan::THICK_R,
        plan::THICK_WORD_LEN,
    )?;
    if r.failures > 0 {
        return Err(Error::Degenerate(format!("{} thickness chains failed", r.failures)));
    }
    Ok((r.longest_chain, r.min_witness))
}

/// Runs every sweep from scratch.
pub fn measure() -> Result<Baselines> {
    let (projection_lipschitz, projection_diameter) = measure_projection()?;
    Ok(Baselines {
        horoball: measure_horoball()?,
        twist_excess: measure_twist()?,
        s04_ball6: measure_s04_ball6()?,
        projection_lipschitz,
        projection_diameter,
        distance_formula: BallSpec::standard().into_iter().map(measure_formula).collect::<Result<_>>()?,
        behrstock: measure_behrstock()?,
        bgit: measure_bgit()?,
        regions: measure_regions()?,
        orthant_pairs: measure_orthant()?,
        thickness: measure_thickness()?,
    })
}

/// Recomputes the named constant and compares it with its frozen value.
pub fn check(name: &str, frozen: &Baselines) -> Result<CheckOutcome> {
    let (f, m, pass): (Value, Value, bool) = match name {
        "horoball-estimate" => {
            let c = measure_horoball()?.c_est;
            (json!(frozen.horoball.c_est), json!(c), c == frozen.horoball.c_est)
        }
        "horodisk-fit" => {
            let h = measure_horoball()?;
            let pass = close(h.hyp_k, frozen.horoball.hyp_k) && close(h.hyp_c, frozen.horoball.hyp_c);
            (json!([frozen.horoball.hyp_k, frozen.horoball.hyp_c]), json!([h.hyp_k, h.hyp_c]), pass)
        }
        "twist-coordinate" => {
            let t = measure_twist()?;
            (json!(frozen.twist_excess), json!(t), t == frozen.twist_excess)
        }
        "ball-s04-r6" => {
            let b = measure_s04_ball6()?;
            (json!(frozen.s04_ball6), json!(b), b == frozen.s04_ball6)
        }
        "projection" => {
            let p = measure_projection()?;
            let want = (frozen.projection_lipschitz, frozen.projection_diameter);
            (json!(want), json!(p), p == want)
        }
        "distance-formula" => {
            let fresh: Vec<FormulaBaseline> =
                frozen.distance_formula.iter().map(refit_formula).collect::<Result<_>>()?;
            let pass = fresh.len() == frozen.distance_formula.len()
                && fresh.iter().zip(&frozen.distance_formula).all(|(a, b)| {
                    a.vertices == b.vertices
                        && a.edges == b.edges
                        && a.pairs == b.pairs
                        && close(a.k_qi, b.k_qi)
                        && close(a.c_qi, b.c_qi)
                });
            (json!(frozen.distance_formula), json!(fresh), pass)
        }
        "behrstock" => {
            let b = measure_behrstock()?;
            (json!(frozen.behrstock), json!(b), b == frozen.behrstock)
        }
        "bgit" => {
            let b = measure_bgit()?;
            (json!(frozen.bgit), json!(b), b == frozen.bgit)
        }
        "regions" => {
            let r = measure_regions()?;
            let pass = r.len() == frozen.regions.len()
                && r.iter().zip(&frozen.regions).all(|(a, b)| {
                    a.delta == b.delta
                        && a.members == b.members
                        && a.pairs == b.pairs
                        && close(a.k_qi, b.k_qi)
                        && close(a.c_qi, b.c_qi)
                        && a.cross_max == b.cross_max
                });
            (json!(frozen.regions), json!(r), pass)
        }
        "orthant" => {
            let n = measure_orthant()?;
            (json!(frozen.orthant_pairs), json!(n), n == frozen.orthant_pairs)
        }
        "thickness" => {
            let t = measure_thickness()?;
            (json!(frozen.thickness), json!(t), t == frozen.thickness)
        }
        other => return Err(Error::UnknownCheck(other.to_string())),
    };
    Ok(CheckOutcome { name: name.to_string(), frozen: f, measured: m, pass })
}
