use amc_core::farey::{self, Slope};
use anyhow::Result;
use clap::Subcommand;
use serde::Serialize;
use serde_json::json;

use super::Ctx;
use crate::output::{self, Config};

#[derive(Debug, Subcommand, Serialize)]
pub enum FareyCmd {
    /// Farey graph distance and one geodesic.
    Dist {
        #[arg(long)]
        a: Slope,
        #[arg(long)]
        b: Slope,
    },
    /// Twist coordinate of `gamma` about `alpha`.
    Twist {
        #[arg(long)]
        alpha: Slope,
        #[arg(long)]
        gamma: Slope,
        /// Reference transversal; defaults to the canonical neighbor of alpha.
        #[arg(long)]
        beta: Option<Slope>,
    },
}

impl FareyCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        let result = match self {
            FareyCmd::Dist { a, b } => {
                let path: Vec<String> = farey::geodesic(*a, *b).iter().map(Slope::to_string).collect();
                json!({ "distance": farey::cc_dist(*a, *b), "geodesic": path })
            }
            FareyCmd::Twist { alpha, gamma, beta } => {
                let beta = beta.unwrap_or_else(|| farey::reference_neighbor(*alpha));
                json!({ "reference": beta.to_string(), "twist": farey::twist_coordinate(*alpha, *gamma, beta)? })
            }
        };
        let name = match self {
            FareyCmd::Dist { .. } => "farey dist",
            FareyCmd::Twist { .. } => "farey twist",
        };
        output::json(ctx.out(), &Config::new(name, self)?, &result)
    }
}
