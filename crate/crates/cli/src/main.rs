//! `amc`: experiment runner for augmented marking complexes.

mod cmd;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cmd::Ctx;

#[derive(Debug, Parser)]
#[command(name = "amc", version, about = "Coarse geometry of marking complexes at desk scale")]
struct Cli {
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit nonzero when the command's check fails.
    #[arg(long, global = true)]
    assert: bool,
    /// Refuse ball generation beyond this many vertices.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget_vertices: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Combinatorial horoball distances.
    #[command(subcommand)]
    Horoball(cmd::horoball::HoroballCmd),
    /// Farey graph distances and twist coordinates.
    #[command(subcommand)]
    Farey(cmd::farey::FareyCmd),
    /// Curves: intersection numbers, twists, projections.
    #[command(subcommand)]
    Curves(cmd::curves::CurvesCmd),
    /// Markings: validation and balls.
    #[command(subcommand)]
    Marking(cmd::marking::MarkingCmd),
    /// Distance formulas.
    #[command(subcommand)]
    Df(cmd::coarse::DfCmd),
    /// Behrstock inequality sweeps.
    #[command(subcommand)]
    Behrstock(cmd::coarse::BehrstockCmd),
    /// Bounded geodesic image sweeps.
    #[command(subcommand)]
    Bgit(cmd::coarse::BgitCmd),
    /// Product regions and distance to them.
    #[command(subcommand)]
    Region(cmd::regions::RegionCmd),
    /// The depth orthant.
    #[command(subcommand)]
    Orthant(cmd::regions::OrthantCmd),
    /// Thickness chains.
    #[command(subcommand)]
    Thick(cmd::regions::ThickCmd),
    /// Thick/thin diagnostics of marking sequences.
    #[command(subcommand)]
    Cones(cmd::regions::ConesCmd),
    /// Recompute frozen constants and compare.
    Regression(cmd::regression::RegressionArgs),
    /// Bundled fixtures.
    #[command(subcommand)]
    Fixtures(cmd::regression::FixturesCmd),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { out: cli.out, assert: cli.assert, budget_vertices: cli.budget_vertices };
    let result = match cli.command {
        Command::Horoball(c) => c.run(&ctx),
        Command::Farey(c) => c.run(&ctx),
        Command::Curves(c) => c.run(&ctx),
        Command::Marking(c) => c.run(&ctx),
        Command::Df(c) => c.run(&ctx),
        Command::Behrstock(c) => c.run(&ctx),
        Command::Bgit(c) => c.run(&ctx),
        Command::Region(c) => c.run(&ctx),
        Command::Orthant(c) => c.run(&ctx),
        Command::Thick(c) => c.run(&ctx),
        Command::Cones(c) => c.run(&ctx),
        Command::Regression(c) => c.run(&ctx),
        Command::Fixtures(c) => c.run(&ctx),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<cmd::AssertionFailed>() => {
            output::note(format!("assertion failed: {e}"));
            ExitCode::from(1)
        }
        Err(e) => {
            output::note(format!("error: {e:#}"));
            ExitCode::from(2)
        }
    }
}
