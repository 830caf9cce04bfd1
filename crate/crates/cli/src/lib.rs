//! Scene-driven front end for the multi-plank machinery: JSON scenes in,
//! deterministic JSON reports (and SVG figures) out.
//!
//! Exit-code contract: 0 means every asserted property held, 1 means a
//! verified property was violated (the report carries the witness), 2 means
//! the input could not be used (unreadable file, schema violation, bad
//! flags).

pub mod commands;
pub mod render;
pub mod report;
pub mod scene;

use clap::{Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "multiplank", about = "Multi-plank construction, verification, and rendering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Scene description (JSON).
    #[arg(long, global = true)]
    pub scene: Option<std::path::PathBuf>,

    /// Output path for artifacts that write files (SVG).
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,

    /// Sampling budget for verification commands.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub budget: usize,

    /// Seed override; falls back to the scene seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Contouring resolution for rendering.
    #[arg(long, global = true, default_value_t = 512)]
    pub resolution: usize,

    /// Subspace dimension k for intrinsic radii and covering checks.
    #[arg(long, global = true, default_value_t = 2)]
    pub k: usize,

    /// Geometric predicate slack override.
    #[arg(long, global = true)]
    pub eps_geom: Option<f64>,

    /// Optimizer convergence slack override.
    #[arg(long, global = true)]
    pub eps_opt: Option<f64>,

    /// Treat multi-planks as closed (boundary counts as covered).
    #[arg(long, global = true, default_value_t = false)]
    pub closed: bool,

    /// Draw the stratification skeleton when rendering.
    #[arg(long, global = true, default_value_t = false)]
    pub strata: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Minimum enclosing balls of the scene's generating sets.
    Meb,
    /// Upper and lower intrinsic inradii of the body K.
    Inradii,
    /// Definition equivalence of multi-plank membership.
    PlankCheck,
    /// Farthest-point Delaunay stratification checks.
    Stratify,
    /// Covering verification and the covering inequality.
    Verify,
    /// Pizza-cutter simulation against the guaranteed bound.
    Pizza,
    /// Two-multi-plank disk cover and its minimal radius.
    Sharpness,
    /// Gauge-norm checks and normed multi-plank verification.
    Normed,
    /// Render the scene to SVG.
    Render,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Meb => "meb",
            Command::Inradii => "inradii",
            Command::PlankCheck => "plank-check",
            Command::Stratify => "stratify",
            Command::Verify => "verify",
            Command::Pizza => "pizza",
            Command::Sharpness => "sharpness",
            Command::Normed => "normed",
            Command::Render => "render",
        }
    }
}

/// Everything a command run produces.
pub struct Output {
    pub report: report::Report,
    pub svg: Option<String>,
}

/// Run one command against raw scene bytes. This is the whole CLI minus
/// argument parsing and process exit, so tests can drive it in-process.
pub fn execute(cli: &Cli, scene_bytes: &[u8]) -> Result<Output, CliError> {
    let scene = scene::Scene::from_json(scene_bytes)?;
    let opts = commands::Opts::from_cli(cli, &scene)?;
    let digest = report::inputs_digest(scene_bytes, &opts, cli.command.name());
    commands::dispatch(cli.command, &scene, &opts, digest)
}

/// Exit code for a finished report: 1 when any verdict failed.
pub fn exit_code(report: &report::Report) -> i32 {
    if report.verdicts.values().all(|v| *v) {
        0
    } else {
        1
    }
}
