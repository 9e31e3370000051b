use std::path::PathBuf;

use amc_core::baseline::{self, Baselines, CHECKS};
use amc_core::fixtures::bundled;
use amc_core::io::{fixture_dir, write_json};
use anyhow::Result;
use clap::{Args, Subcommand};
use serde::Serialize;

use super::Ctx;
use crate::output::{self, Config};

#[derive(Debug, Args, Serialize)]
pub struct RegressionArgs {
    /// Checks to run; all when omitted.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Baseline file; defaults to the bundled one (or `AMC_BASELINES`).
    #[arg(long)]
    baselines: Option<PathBuf>,
    /// Measure everything and write the baseline file instead of checking.
    #[arg(long)]
    freeze: bool,
}

impl RegressionArgs {
    pub fn run(&self, ctx: &Ctx) -> Result<()> {
        let path = self.baselines.clone().unwrap_or_else(Baselines::default_path);
        if self.freeze {
            let b = baseline::measure()?;
            b.save(&path)?;
            output::note(format!("froze baselines at {}", path.display()));
            return output::json(ctx.out(), &Config::new("regression", self)?, &b);
        }
        let frozen = Baselines::load(&path)?;
        let names: Vec<String> =
            if self.checks.is_empty() { CHECKS.iter().map(|s| s.to_string()).collect() } else { self.checks.clone() };
        let mut outcomes = Vec::new();
        for n in &names {
            let o = baseline::check(n, &frozen)?;
            output::note(format!("{} {}", if o.pass { "PASS" } else { "FAIL" }, o.name));
            outcomes.push(o);
        }
        output::json(ctx.out(), &Config::new("regression", self)?, &outcomes)?;
        let failed = outcomes.iter().filter(|o| !o.pass).count();
        ctx.check(failed == 0, format!("{} of {} checks pass", outcomes.len() - failed, outcomes.len()))
    }
}

#[derive(Debug, Subcommand, Serialize)]
pub enum FixturesCmd {
    /// Writes every bundled fixture into a directory.
    Export {
        /// Target directory; defaults to the fixture directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

impl FixturesCmd {
    pub fn run(&self, _ctx: &Ctx) -> Result<()> {
        let FixturesCmd::Export { dir } = self;
        let dir = dir.clone().unwrap_or_else(fixture_dir);
        std::fs::create_dir_all(&dir)?;
        let files = bundled()?;
        for (name, value) in &files {
            write_json(&dir.join(name), value)?;
        }
        output::note(format!("wrote {} fixtures to {}", files.len(), dir.display()));
        Ok(())
    }
}
