use std::path::{Path, PathBuf};

use amc_core::experiments;
use amc_core::io::{CurveFile, SequenceFile};
use amc_core::markings::{from_record, AugmentedMarking, SphereModel, SurfaceModel};
use amc_core::regions::{classify_sequence, pants_marking, rho_dist, sublinear_profile, theta, thickness_chain};
use amc_core::SurfaceKind;
use anyhow::{bail, Result};
use clap::Subcommand;
use serde::Serialize;
use serde_json::json;

use super::{frozen_k_min, read_artifact, AnyCurve, AnyMarking, Ctx};
use crate::output::{self, Config};

#[derive(Debug, Subcommand, Serialize)]
pub enum RegionCmd {
    /// Factor projections of a marking in `Q(delta)`.
    Theta {
        #[arg(long)]
        m: PathBuf,
        /// Curve files of the multicurve.
        #[arg(long, num_args = 1.., required = true)]
        delta: Vec<PathBuf>,
    },
    /// Thresholded distance from a marking to `Q(delta)`, over the domains of
    /// the marking and of a marking completing `delta`.
    Rho {
        #[arg(long)]
        m: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        delta: Vec<PathBuf>,
        #[arg(long = "K")]
        k: i64,
        #[arg(long)]
        k_min: Option<i64>,
    },
}

fn sphere_curves(paths: &[PathBuf]) -> Result<Vec<amc_core::curves::CurveSystem>> {
    paths
        .iter()
        .map(|p| match AnyCurve::load(p)? {
            AnyCurve::Sphere(c) => Ok(c),
            AnyCurve::Slope(..) => bail!("expected a curve on S_{{0,5}}"),
        })
        .collect()
}

fn slope_curves(paths: &[PathBuf], kind: SurfaceKind) -> Result<Vec<amc_core::farey::Slope>> {
    paths
        .iter()
        .map(|p| match AnyCurve::load(p)? {
            AnyCurve::Slope(k, s) if k == kind => Ok(s),
            _ => bail!("expected a slope on S_{{{kind}}}"),
        })
        .collect()
}

impl RegionCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        match self {
            RegionCmd::Theta { m, delta } => {
                let result = match AnyMarking::load(m)? {
                    AnyMarking::Farey(model, x) => {
                        serde_json::to_value(theta(&model, &x, &slope_curves(delta, model.kind())?)?)?
                    }
                    AnyMarking::Sphere(model, x) => serde_json::to_value(theta(&model, &x, &sphere_curves(delta)?)?)?,
                };
                output::json(ctx.out(), &Config::new("region theta", self)?, &result)
            }
            RegionCmd::Rho { m, delta, k, k_min } => {
                let result = match AnyMarking::load(m)? {
                    AnyMarking::Farey(model, x) => {
                        let d = slope_curves(delta, model.kind())?;
                        let km = k_min.map_or_else(|| frozen_k_min(model.kind()), Ok)?;
                        let mut domains = model.domains(&x.base());
                        domains.extend(model.domains(&d));
                        domains.sort();
                        domains.dedup();
                        serde_json::to_value(rho_dist(&model, &x, &d, *k, km, &domains)?)?
                    }
                    AnyMarking::Sphere(model, x) => {
                        let d = sphere_curves(delta)?;
                        let km = k_min.map_or_else(|| frozen_k_min(SurfaceKind::S05), Ok)?;
                        let mut domains = model.domains(&x.base());
                        if !d.is_empty() {
                            domains.extend(model.domains(&pants_marking(&model, &d)?.base()));
                        }
                        domains.sort();
                        domains.dedup();
                        serde_json::to_value(rho_dist(&model, &x, &d, *k, km, &domains)?)?
                    }
                };
                output::json(ctx.out(), &Config::new("region rho", self)?, &result)
            }
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
pub enum OrthantCmd {
    /// Ball distance between all orthant points of the `S_{0,5}` base against
    /// the sum of depth differences.
    Check {
        #[arg(long, default_value_t = 3)]
        max_depth: i64,
        #[arg(long, default_value_t = 8)]
        cap_twist: u32,
    },
}

impl OrthantCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        let OrthantCmd::Check { max_depth, cap_twist } = self;
        let r = experiments::orthant_check(&SphereModel::new()?, *max_depth, *cap_twist)?;
        output::json(ctx.out(), &Config::new("orthant check", self)?, &r)?;
        ctx.check(r.failures.is_empty(), format!("l1 law on {} pairs", r.pairs))
    }
}

#[derive(Debug, Subcommand, Serialize)]
pub enum ThickCmd {
    /// Chain of curves from alpha to beta with vertical-ray witnesses.
    Chain {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        #[arg(long = "R", default_value_t = 20)]
        r: u64,
    },
    /// Chains between seeded random curve pairs.
    Sweep {
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long = "R", default_value_t = 50)]
        r: u64,
        /// Length of the random words producing the curves.
        #[arg(long, default_value_t = 8)]
        word_len: usize,
    },
}

impl ThickCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        let model = SphereModel::new()?;
        match self {
            ThickCmd::Chain { alpha, beta, r } => {
                let (a, b) = match (AnyCurve::load(alpha)?, AnyCurve::load(beta)?) {
                    (AnyCurve::Sphere(a), AnyCurve::Sphere(b)) => (a, b),
                    _ => bail!("thickness chains are built on S_{{0,5}}"),
                };
                let chain = thickness_chain(&model, &a, &b, *r)?;
                let curves: Vec<CurveFile> = chain.curves.iter().map(|c| CurveFile::new(SurfaceKind::S05, c)).collect();
                let witnesses: Vec<u64> = chain.witnesses.iter().map(|w| w.1).collect();
                output::json(
                    ctx.out(),
                    &Config::new("thick chain", self)?,
                    &json!({ "curves": curves, "witness_diameters": witnesses }),
                )?;
                ctx.check(witnesses.iter().all(|&d| d >= *r), format!("witnesses of diameter >= {r}"))
            }
            ThickCmd::Sweep { pairs, seed, r, word_len } => {
                let rep = experiments::thickness_sweep(&model, *seed, *pairs, *r, *word_len)?;
                output::json(ctx.out(), &Config::new("thick sweep", self)?, &rep)?;
                ctx.check(rep.failures == 0 && rep.min_witness >= *r, format!("{pairs} chains with witnesses >= {r}"))
            }
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
pub enum ConesCmd {
    /// Finite-scale thick/thin verdict of a marking sequence.
    Classify {
        #[arg(long)]
        seq: PathBuf,
        /// `lin` or `quad`; overrides the file's scale.
        #[arg(long)]
        scale: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
    },
    /// Per-index largest proper projection distance over the scale.
    Profile {
        #[arg(long)]
        xs: PathBuf,
        #[arg(long)]
        mus: PathBuf,
        #[arg(long)]
        scale: Option<String>,
    },
}

fn load_sequence(path: &Path, scale: &Option<String>) -> Result<(SequenceFile, amc_core::regions::ScalingSequence)> {
    let f: SequenceFile = read_artifact(path)?;
    let spec = match scale {
        Some(s) => amc_core::io::ScaleSpec::Named(s.clone()),
        None => f.scale.clone(),
    };
    let s = spec.build(f.markings.len())?;
    Ok((f, s))
}

fn sphere_markings(
    model: &SphereModel,
    f: &SequenceFile,
) -> Result<Vec<AugmentedMarking<amc_core::curves::CurveSystem>>> {
    if f.surface != SurfaceKind::S05 {
        bail!("sequence diagnostics here run on S_{{0,5}}");
    }
    f.records()?.iter().map(|r| Ok(from_record(model, r)?)).collect()
}

impl ConesCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        let model = SphereModel::new()?;
        match self {
            ConesCmd::Classify { seq, scale, tau } => {
                let (f, s) = load_sequence(seq, scale)?;
                let ms = sphere_markings(&model, &f)?;
                let c = classify_sequence(&model, &ms, &s, *tau)?;
                output::note(format!("A = {} verdict {:?}", c.a, c.verdict));
                output::json(ctx.out(), &Config::new("cones classify", self)?, &c)
            }
            ConesCmd::Profile { xs, mus, scale } => {
                let (fx, s) = load_sequence(xs, scale)?;
                let (fm, _) = load_sequence(mus, scale)?;
                let x = sphere_markings(&model, &fx)?;
                let m = sphere_markings(&model, &fm)?;
                let series = sublinear_profile(&model, &x, &m, &s)?;
                output::json(ctx.out(), &Config::new("cones profile", self)?, &json!({ "profile": series }))
            }
        }
    }
}
