use std::str::FromStr;

use amc_core::baseline::Baselines;
use amc_core::horoball::{self, HoroballVertex};
use anyhow::{anyhow, Result};
use clap::Subcommand;
use serde::Serialize;
use serde_json::json;

use super::Ctx;
use crate::output::{self, Config};

/// `x,m` on the command line.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VertexArg(HoroballVertex);

impl FromStr for VertexArg {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, m) = s.split_once(',').ok_or_else(|| anyhow!("expected x,m"))?;
        Ok(VertexArg(HoroballVertex::new(x.trim().parse()?, m.trim().parse()?)))
    }
}

#[derive(Debug, Subcommand, Serialize)]
pub enum HoroballCmd {
    /// Exact, estimated and hyperbolic distance between two vertices.
    Dist {
        #[arg(long)]
        from: VertexArg,
        #[arg(long)]
        to: VertexArg,
    },
    /// Every pair from `(0, m)` to `(dx, m')`, `0 <= dx <= max-x`, as CSV;
    /// `--assert` compares the estimate gap with the frozen constant.
    Sweep {
        #[arg(long, default_value_t = 1024)]
        max_x: i64,
        #[arg(long, default_value_t = 10)]
        max_m: u32,
    },
}

impl HoroballCmd {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        match self {
            HoroballCmd::Dist { from, to } => {
                let (u, v) = (from.0, to.0);
                let exact = horoball::dist_exact(u, v)?;
                let result = json!({
                    "exact": exact,
                    "estimate": horoball::dist_estimate(u, v),
                    "hyperbolic": horoball::hyp_dist(u, v),
                });
                output::json(ctx.out(), &Config::new("horoball dist", self)?, &result)
            }
            HoroballCmd::Sweep { max_x, max_m } => {
                let mut rows = Vec::new();
                let mut worst = (i64::MAX, i64::MIN);
                for m_src in 0..=*max_m {
                    let table = horoball::DistanceTable::build(m_src, *max_x, *max_m)?;
                    for dx in 0..=*max_x {
                        for m in 0..=*max_m {
                            let (u, v) = (HoroballVertex::new(0, m_src), HoroballVertex::new(dx, m));
                            let exact = table.get(dx, m).ok_or_else(|| anyhow!("pair outside the table"))?;
                            let est = horoball::dist_estimate(u, v);
                            let gap = est as i64 - exact as i64;
                            worst = (worst.0.min(gap), worst.1.max(gap));
                            rows.push(vec![
                                format!("0,{m_src}"),
                                format!("{dx},{m}"),
                                exact.to_string(),
                                est.to_string(),
                                format!("{:.6}", horoball::hyp_dist(u, v)),
                            ]);
                        }
                    }
                }
                output::csv(
                    ctx.out(),
                    &Config::new("horoball sweep", self)?,
                    &["from", "to", "exact", "estimate", "hyp"],
                    &rows,
                )?;
                output::note(format!("pairs {} estimate gap in [{}, {}]", rows.len(), worst.0, worst.1));
                if ctx.assert {
                    let frozen = Baselines::load(&Baselines::default_path())?.horoball.c_est;
                    ctx.check(worst.0 >= 0 && worst.1 <= frozen, format!("0 <= gap <= C_est = {frozen}"))?;
                }
                Ok(())
            }
        }
    }
}
