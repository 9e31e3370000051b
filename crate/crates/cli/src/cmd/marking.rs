use std::path::PathBuf;

use amc_core::io::{BallFile, MarkingFile};
use amc_core::markings::{validate, BallGraph, Caps, FareyModel, SphereModel};
use amc_core::SurfaceKind;
use anyhow::Result;
use clap::Subcommand;
use serde::Serialize;
use serde_json::json;

use super::{AnyMarking, Ctx};
use crate::output::{self, Config};

#[derive(Debug, Subcommand, Serialize)]
pub enum MarkingCmd {
    /// Lists every violated marking invariant.
    Validate {
        #[arg(long)]
        m: PathBuf,
    },
    /// Exhaustive ball about a marking, written as a ball file.
    Ball {
        #[arg(long)]
        center: PathBuf,
        #[arg(long)]
        radius: u32,
        /// Largest twist power per move.
        #[arg(long)]
        cap_twist: Option<u32>,
    },
}

impl MarkingCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        match self {
            MarkingCmd::Validate { m } => {
                let f: MarkingFile = super::read_artifact(m)?;
                let problems = if f.surface == SurfaceKind::S05 {
                    validate(&SphereModel::new()?, &f.record()?)
                } else {
                    validate(&FareyModel::new(f.surface)?, &f.record()?)
                };
                output::json(ctx.out(), &Config::new("marking validate", self)?, &json!({ "violations": problems }))?;
                ctx.check(problems.is_empty(), "marking is valid")
            }
            MarkingCmd::Ball { center, radius, cap_twist } => {
                let caps = Caps { max_twist: *cap_twist, budget_vertices: ctx.budget_vertices };
                let file = match AnyMarking::load(center)? {
                    AnyMarking::Farey(model, m) => {
                        let kind = amc_core::markings::SurfaceModel::kind(&model);
                        BallFile::new(kind, &BallGraph::generate(&model, &m, *radius, &caps)?)
                    }
                    AnyMarking::Sphere(model, m) => {
                        BallFile::new(SurfaceKind::S05, &BallGraph::generate(&model, &m, *radius, &caps)?)
                    }
                };
                let edges: usize = file.adjacency.iter().map(Vec::len).sum::<usize>() / 2;
                output::note(format!("vertices {} edges {edges}", file.vertices.len()));
                output::json(ctx.out(), &Config::new("marking ball", self)?, &file)
            }
        }
    }
}
