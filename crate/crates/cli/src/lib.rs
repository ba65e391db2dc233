pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

pub use config::{GridSpec, RunConfig};
pub use output::{Outcome, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "neil", version, about = "Cone membership, dual certificates and dilations for the Neil algebra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Separate the defect kernel of the two-point matrix Blaschke function from the cone.
    Counterexample,
    /// Scalar interpolation: nodes and targets from the config.
    Pick,
    /// Membership of an explicit target kernel.
    Cone,
    /// Dilate two rank-one decompositions of the identity.
    Naimark,
    /// Norm profile of `lambda S + (1 - lambda) T` on the circle `|lambda - 1/2| = 1/2`.
    Variety,
    /// Commuting contractions `X^3 = Y^2` with a non-contractive witness.
    Noxy,
    /// Compare a Neil pair with compressions of a unitary.
    Ccverify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Counterexample => "counterexample",
            Command::Pick => "pick",
            Command::Cone => "cone",
            Command::Naimark => "naimark",
            Command::Variety => "variety",
            Command::Noxy => "noxy",
            Command::Ccverify => "ccverify",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalOpts {
    /// JSON config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Search grid as <radii>x<angles>.
    #[arg(long, global = true)]
    pub grid: Option<GridSpec>,
    #[arg(long, global = true)]
    pub angles: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

impl GlobalOpts {
    /// Config file contents with flags taking precedence.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.tol = self.tol.or(cfg.tol);
        cfg.grid = self.grid.or(cfg.grid);
        cfg.angles = self.angles.or(cfg.angles);
        cfg.seed = self.seed.or(cfg.seed);
        cfg.check_tolerances()?;
        Ok(cfg)
    }
}

/// Runs one subcommand on a resolved config; returns the outcome and the JSON report.
pub fn execute(command: Command, mut cfg: RunConfig) -> Result<(Outcome, String)> {
    match command {
        Command::Counterexample => commands::counterexample::run(&mut cfg),
        Command::Pick => commands::cone::run_pick(&mut cfg),
        Command::Cone => commands::cone::run_cone(&mut cfg),
        Command::Naimark => commands::naimark::run(&mut cfg),
        Command::Variety => commands::variety::run(&mut cfg),
        Command::Noxy => commands::noxy::run(&mut cfg),
        Command::Ccverify => commands::ccverify::run(&mut cfg),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = cli.opts.resolve()?;
    let (outcome, text) = execute(cli.command, cfg)?;
    output::emit(&text, cli.opts.out.as_deref())?;
    Ok(outcome)
}
