//! Subcommand implementations.

pub mod coarse;
pub mod curves;
pub mod farey;
pub mod horoball;
pub mod marking;
pub mod regions;
pub mod regression;

use std::path::{Path, PathBuf};

use amc_core::curves::CurveSystem;
use amc_core::farey::Slope;
use amc_core::io::{read_json, CurveFile, MarkingFile};
use amc_core::markings::{from_record, AugmentedMarking, FareyModel, SphereModel};
use amc_core::SurfaceKind;
use anyhow::{bail, Result};

/// Options shared by every subcommand.
pub struct Ctx {
    pub out: Option<PathBuf>,
    pub assert: bool,
    pub budget_vertices: usize,
}

impl Ctx {
    pub fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }

    /// Fails with [`AssertionFailed`] in `--assert` mode when `ok` is false.
    pub fn check(&self, ok: bool, what: impl Into<String>) -> Result<()> {
        let what = what.into();
        output_note(ok, &what);
        if self.assert && !ok {
            return Err(AssertionFailed(what).into());
        }
        Ok(())
    }
}

fn output_note(ok: bool, what: &str) {
    crate::output::note(format!("{} {what}", if ok { "PASS" } else { "FAIL" }));
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct AssertionFailed(pub String);

/// A curve file on either model family.
pub enum AnyCurve {
    Slope(SurfaceKind, Slope),
    Sphere(CurveSystem),
}

impl AnyCurve {
    pub fn load(path: &Path) -> Result<Self> {
        let f: CurveFile = read_artifact(path)?;
        Ok(if f.surface == SurfaceKind::S05 {
            AnyCurve::Sphere(f.curve()?)
        } else {
            AnyCurve::Slope(f.surface, f.curve()?)
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        match self {
            AnyCurve::Slope(k, _) => *k,
            AnyCurve::Sphere(_) => SurfaceKind::S05,
        }
    }
}

/// A marking file on either model family, validated.
pub enum AnyMarking {
    Farey(FareyModel, AugmentedMarking<Slope>),
    Sphere(SphereModel, AugmentedMarking<CurveSystem>),
}

impl AnyMarking {
    pub fn load(path: &Path) -> Result<Self> {
        let f: MarkingFile = read_artifact(path)?;
        Ok(if f.surface == SurfaceKind::S05 {
            let model = SphereModel::new()?;
            let m = from_record(&model, &f.record()?)?;
            AnyMarking::Sphere(model, m)
        } else {
            let model = FareyModel::new(f.surface)?;
            let m = from_record(&model, &f.record()?)?;
            AnyMarking::Farey(model, m)
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        match self {
            AnyMarking::Farey(m, _) => amc_core::markings::SurfaceModel::kind(m),
            AnyMarking::Sphere(..) => SurfaceKind::S05,
        }
    }
}

/// Loads two markings that must share a surface.
pub fn load_pair(a: &Path, b: &Path) -> Result<(AnyMarking, AnyMarking)> {
    let (x, y) = (AnyMarking::load(a)?, AnyMarking::load(b)?);
    if x.kind() != y.kind() {
        bail!("markings live on different surfaces");
    }
    Ok((x, y))
}

/// Reads a JSON file that is either bare or an artifact `{config, result}`.
pub fn read_artifact<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let v: serde_json::Value = read_json(path)?;
    let body = match v {
        serde_json::Value::Object(mut o) if o.contains_key("config") && o.contains_key("result") => {
            o.remove("result").unwrap_or_default()
        }
        other => other,
    };
    Ok(serde_json::from_value(body)?)
}

/// Frozen `K'` for a surface from the baseline file.
pub fn frozen_k_min(kind: SurfaceKind) -> Result<i64> {
    let b = amc_core::baseline::Baselines::load(&amc_core::baseline::Baselines::default_path())?;
    b.distance_formula
        .iter()
        .find(|f| f.ball.surface == kind)
        .map(|f| f.k_min)
        .ok_or_else(|| anyhow::anyhow!("no frozen threshold for S_{{{kind}}}"))
}
