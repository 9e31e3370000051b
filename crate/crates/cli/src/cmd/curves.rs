use std::path::{Path, PathBuf};

use amc_core::curves::atlas::CurveProjection;
use amc_core::io::CurveFile;
use amc_core::markings::{FareyModel, SphereModel, SurfaceModel};
use amc_core::{Subsurface, SurfaceKind};
use anyhow::{bail, Result};
use clap::Subcommand;
use serde::Serialize;
use serde_json::json;

use super::{AnyCurve, Ctx};
use crate::output::{self, Config};

#[derive(Debug, Subcommand, Serialize)]
pub enum CurvesCmd {
    /// Geometric intersection number.
    I {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Power of the twist generator about a curve (a half twist on `S_{0,5}`).
    Twist {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        about: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Projection of a curve to an annulus (`--core`) or to the four-holed
    /// sphere cut off by `--boundary` on `S_{0,5}`.
    Project {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, conflicts_with = "boundary")]
        core: Option<PathBuf>,
        #[arg(long)]
        boundary: Option<PathBuf>,
    },
}

fn pair(a: &Path, b: &Path) -> Result<(AnyCurve, AnyCurve)> {
    let (x, y) = (AnyCurve::load(a)?, AnyCurve::load(b)?);
    if x.kind() != y.kind() {
        bail!("curves live on different surfaces");
    }
    Ok((x, y))
}

impl CurvesCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        let (name, result) = match self {
            CurvesCmd::I { a, b } => {
                let i = match pair(a, b)? {
                    (AnyCurve::Slope(k, x), AnyCurve::Slope(_, y)) => FareyModel::new(k)?.intersection(&x, &y)?,
                    (AnyCurve::Sphere(x), AnyCurve::Sphere(y)) => SphereModel::new()?.intersection(&x, &y)?,
                    _ => unreachable!("kinds checked"),
                };
                ("curves i", json!({ "intersection": i }))
            }
            CurvesCmd::Twist { curve, about, k } => {
                let file = match pair(curve, about)? {
                    (AnyCurve::Slope(kind, c), AnyCurve::Slope(_, a)) => {
                        CurveFile::new(kind, &FareyModel::new(kind)?.twist(&c, &a, *k)?)
                    }
                    (AnyCurve::Sphere(c), AnyCurve::Sphere(a)) => {
                        CurveFile::new(SurfaceKind::S05, &SphereModel::new()?.twist(&c, &a, *k)?)
                    }
                    _ => unreachable!("kinds checked"),
                };
                ("curves twist", serde_json::to_value(file)?)
            }
            CurvesCmd::Project { curve, core, boundary } => {
                let target = core.as_ref().or(boundary.as_ref());
                let Some(target) = target else { bail!("give --core or --boundary") };
                let result = match pair(curve, target)? {
                    (AnyCurve::Slope(kind, c), AnyCurve::Slope(_, a)) => {
                        if boundary.is_some() {
                            bail!("S_{{{kind}}} has no proper non-annular subsurfaces");
                        }
                        let m = FareyModel::new(kind)?;
                        if m.intersection(&c, &a)? == 0 {
                            json!({ "empty": true })
                        } else {
                            json!({ "twist": m.annular_twist(&a, &c)? })
                        }
                    }
                    (AnyCurve::Sphere(c), AnyCurve::Sphere(a)) => {
                        let atlas = SphereModel::new()?.atlas();
                        let y = if core.is_some() {
                            Subsurface::Annulus(a)
                        } else {
                            Subsurface::Piece { boundary: vec![a], component: 0 }
                        };
                        match atlas.project(&c, &y)? {
                            CurveProjection::Empty => json!({ "empty": true }),
                            CurveProjection::Twist(t) => json!({ "twist": t }),
                            CurveProjection::Simplex(cs) => {
                                let files: Vec<CurveFile> =
                                    cs.iter().map(|x| CurveFile::new(SurfaceKind::S05, x)).collect();
                                let slopes: Vec<String> = match &y {
                                    Subsurface::Piece { boundary, .. } => {
                                        atlas.support(&boundary[0], &c)?.iter().map(ToString::to_string).collect()
                                    }
                                    _ => Vec::new(),
                                };
                                json!({ "curves": files, "slopes": slopes })
                            }
                        }
                    }
                    _ => unreachable!("kinds checked"),
                };
                ("curves project", result)
            }
        };
        output::json(ctx.out(), &Config::new(name, self)?, &result)
    }
}
