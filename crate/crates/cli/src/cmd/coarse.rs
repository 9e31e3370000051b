use std::path::{Path, PathBuf};

use amc_core::coarse::{distance_formula, harvest_domains};
use amc_core::experiments::{self, qi_report};
use amc_core::fixtures::{sphere_base, AnyBall, BallSpec};
use amc_core::io::BallFile;
use amc_core::markings::{AugmentedMarking, BallGraph, Caps, FareyModel, SphereModel, SurfaceModel};
use amc_core::{Subsurface, SurfaceKind};
use anyhow::{anyhow, Result};
use clap::Subcommand;
use serde::Serialize;
use serde_json::json;

use super::{frozen_k_min, load_pair, read_artifact, AnyMarking, Ctx};
use crate::output::{self, Config};

#[derive(Debug, Subcommand, Serialize)]
pub enum DfCmd {
    /// Both formula sums between two markings, over the domains harvested
    /// along an in-ball geodesic.
    Eval {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long = "K")]
        k: i64,
        /// Minimal threshold; defaults to the frozen value.
        #[arg(long)]
        k_min: Option<i64>,
        /// Radius of the ball searched for a connecting geodesic.
        #[arg(long, default_value_t = 6)]
        radius: u32,
        #[arg(long)]
        cap_twist: Option<u32>,
    },
    /// Two-sided fit of ball distance against the AM formula over exact pairs.
    Fit {
        /// A ball file; without it, the standard ball of `--surface`.
        #[arg(long)]
        ball: Option<PathBuf>,
        #[arg(long, default_value = "0,5")]
        surface: SurfaceKind,
        #[arg(long = "K")]
        k: i64,
        #[arg(long)]
        k_min: Option<i64>,
    },
}

fn eval<M: SurfaceModel>(
    model: &M,
    a: &AugmentedMarking<M::Curve>,
    b: &AugmentedMarking<M::Curve>,
    k: i64,
    k_min: i64,
    caps: &Caps,
    radius: u32,
) -> Result<serde_json::Value> {
    let g = BallGraph::generate(model, a, radius, caps)?;
    let target = g.index_of(b).ok_or_else(|| anyhow!("second marking is not within radius {radius}"))?;
    let path: Vec<AugmentedMarking<M::Curve>> =
        g.path(g.center, target).expect("reachable").iter().map(|&i| g.vertices[i as usize].clone()).collect();
    let domains = harvest_domains(model, &path)?;
    let t = distance_formula(model, a, b, k, k_min, &domains)?;
    Ok(json!({
        "ball_distance": path.len() - 1,
        "distance_is_exact": g.distance_is_exact(g.center, target),
        "domains": domains.len(),
        "marking": t.marking,
        "augmented": t.augmented,
    }))
}

fn load_ball_and_fit(path: &Path, k: i64, k_min: Option<i64>) -> Result<serde_json::Value> {
    let f: BallFile = read_artifact(path)?;
    let k_min = match k_min {
        Some(v) => v,
        None => frozen_k_min(f.surface)?,
    };
    let report = if f.surface == SurfaceKind::S05 {
        qi_report(&SphereModel::new()?, &f.graph()?, k, k_min)?
    } else {
        qi_report(&FareyModel::new(f.surface)?, &f.graph()?, k, k_min)?
    };
    Ok(serde_json::to_value(report)?)
}

impl DfCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        match self {
            DfCmd::Eval { a, b, k, k_min, radius, cap_twist } => {
                let caps = Caps { max_twist: *cap_twist, budget_vertices: ctx.budget_vertices };
                let result = match load_pair(a, b)? {
                    (AnyMarking::Farey(model, x), AnyMarking::Farey(_, y)) => {
                        let km = k_min.map_or_else(|| frozen_k_min(model.kind()), Ok)?;
                        eval(&model, &x, &y, *k, km, &caps, *radius)?
                    }
                    (AnyMarking::Sphere(model, x), AnyMarking::Sphere(_, y)) => {
                        let km = k_min.map_or_else(|| frozen_k_min(SurfaceKind::S05), Ok)?;
                        eval(&model, &x, &y, *k, km, &caps, *radius)?
                    }
                    _ => unreachable!("kinds checked"),
                };
                output::json(ctx.out(), &Config::new("df eval", self)?, &result)
            }
            DfCmd::Fit { ball, surface, k, k_min } => {
                let result = match ball {
                    Some(p) => load_ball_and_fit(p, *k, *k_min)?,
                    None => {
                        let spec = BallSpec::standard()
                            .into_iter()
                            .find(|s| s.surface == *surface)
                            .ok_or_else(|| anyhow!("no standard ball on S_{{{surface}}}"))?;
                        let km = k_min.map_or_else(|| frozen_k_min(*surface), Ok)?;
                        let r = match AnyBall::generate(&spec, ctx.budget_vertices)? {
                            AnyBall::Farey(m, g) => qi_report(&m, &g, *k, km)?,
                            AnyBall::Sphere(m, g) => qi_report(&m, &g, *k, km)?,
                        };
                        serde_json::to_value(r)?
                    }
                };
                output::json(ctx.out(), &Config::new("df fit", self)?, &result)
            }
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
pub enum BehrstockCmd {
    /// Seeded triples `(m, Y, Z)` on the standard `S_{0,5}` ball, as CSV;
    /// `--assert` compares the maximum with the frozen constant.
    Sweep {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn describe(y: &Subsurface<amc_core::curves::CurveSystem>) -> String {
    let coords = |c: &amc_core::curves::CurveSystem| format!("{:?}", c.coords());
    match y {
        Subsurface::Whole => "whole".into(),
        Subsurface::Annulus(c) => format!("annulus {}", coords(c)),
        Subsurface::Piece { boundary, component } => {
            let b: Vec<String> = boundary.iter().map(coords).collect();
            format!("piece {} #{component}", b.join(" "))
        }
    }
}

impl BehrstockCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        let BehrstockCmd::Sweep { n, seed } = self;
        let model = SphereModel::new()?;
        let spec = BallSpec::standard()[2];
        let ball = BallGraph::generate(&model, &sphere_base(&model)?, spec.radius, &spec.caps(ctx.budget_vertices))?;
        let rows = experiments::behrstock_samples(&model, &ball, *seed, *n)?;
        let table: Vec<Vec<String>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| vec![i.to_string(), r.vertex.to_string(), describe(&r.y), describe(&r.z), r.min.to_string()])
            .collect();
        output::csv(ctx.out(), &Config::new("behrstock sweep", self)?, &["sample", "vertex", "y", "z", "min"], &table)?;
        let summary = experiments::summarize_behrstock(*seed, &rows);
        output::note(format!("max {} histogram {:?}", summary.max, summary.histogram));
        if ctx.assert {
            let frozen = amc_core::baseline::Baselines::load(&amc_core::baseline::Baselines::default_path())?.behrstock;
            ctx.check(summary.max <= frozen, format!("max <= M1 = {frozen}"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Subcommand, Serialize)]
pub enum BgitCmd {
    /// Seeded Farey geodesics on `S_{1,1}` avoiding the star of a sampled
    /// core, as CSV; `--assert` compares with the frozen constant.
    Sweep {
        #[arg(long, default_value_t = 1_000)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Bound on numerators and denominators.
        #[arg(long, default_value_t = 1_000)]
        max_entry: i64,
    },
}

impl BgitCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        let BgitCmd::Sweep { n, seed, max_entry } = self;
        let rows = experiments::bgit_samples(&FareyModel::new(SurfaceKind::S11)?, *seed, *n, *max_entry)?;
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.core.to_string(),
                    r.from.to_string(),
                    r.to.to_string(),
                    r.length.to_string(),
                    r.image.twist_diam.to_string(),
                    r.image.horoball_diam.to_string(),
                ]
            })
            .collect();
        output::csv(
            ctx.out(),
            &Config::new("bgit sweep", self)?,
            &["core", "from", "to", "length", "twist_diam", "horoball_diam"],
            &table,
        )?;
        let s = experiments::summarize_bgit(*seed, &rows);
        output::note(format!("max twist diam {} max horoball diam {}", s.max_twist_diam, s.max_horoball_diam));
        if ctx.assert {
            let (m0, h0) = amc_core::baseline::Baselines::load(&amc_core::baseline::Baselines::default_path())?.bgit;
            ctx.check(s.max_twist_diam <= m0 && s.max_horoball_diam <= h0, format!("diameters <= M0 = ({m0}, {h0})"))?;
        }
        Ok(())
    }
}
