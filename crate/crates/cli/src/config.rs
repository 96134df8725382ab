//! Run configuration: command-line flags over an optional TOML file over
//! built-in defaults.

use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;
use stackstab::io::parse_catalog;
use stackstab::{Catalog, Mode, SolveOptions, SolverWeights, Thresholds};

pub const CONFIG_ENV: &str = "STACKSTAB_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Interlocking,
    Smooth,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Interlocking => Mode::Interlocking,
            ModeArg::Smooth => Mode::Smooth,
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonFlags {
    /// Weight of the per-brick maximum drag in the objective.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Weight of every individual drag force in the objective.
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Friction capacity of one contact point, newtons.
    #[arg(long = "capacity-T", global = true, value_name = "NEWTONS")]
    pub capacity_t: Option<f64>,
    /// Force residual tolerated before a brick fails, newtons.
    #[arg(long, global = true)]
    pub eps_force: Option<f64>,
    /// Torque residual tolerated before a brick fails, newton-millimeters.
    #[arg(long, global = true)]
    pub eps_torque: Option<f64>,
    /// Contact model; overrides the layout file.
    #[arg(long, value_enum, global = true)]
    pub mode: Option<ModeArg>,
    /// Treat layer 0 as resting on nothing.
    #[arg(long, global = true)]
    pub no_ground: bool,
    /// Parallel structures in batch mode.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Solver wall-clock limit per structure, seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub time_limit: Option<f64>,
    /// Branch-and-bound node limit per structure.
    #[arg(long, global = true)]
    pub node_limit: Option<usize>,
    /// Brick catalog file; defaults to the built-in catalog.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// TOML configuration file.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
}

/// Contents of a TOML configuration file. Every key is optional.
#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    #[serde(rename = "capacity_T")]
    pub capacity_t: Option<f64>,
    pub eps_force: Option<f64>,
    pub eps_torque: Option<f64>,
    pub mode: Option<ModeArg>,
    pub ground_knobs: Option<bool>,
    pub workers: Option<usize>,
    pub time_limit: Option<f64>,
    pub node_limit: Option<usize>,
    /// Relative paths resolve against the configuration file's directory.
    pub catalog: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let mut cfg: FileConfig =
            toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))?;
        if let Some(c) = &cfg.catalog {
            if c.is_relative() {
                cfg.catalog = Some(path.parent().unwrap_or(Path::new(".")).join(c));
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub weights: SolverWeights,
    pub options: SolveOptions,
    pub thresholds: Thresholds,
    pub catalog: Catalog,
    pub workers: usize,
    /// Forced contact model, if any.
    pub mode: Option<Mode>,
    /// Forced baseplate setting, if any.
    pub ground_knobs: Option<bool>,
}

impl RunConfig {
    pub fn resolve(flags: &CommonFlags) -> Result<Self> {
        let file = match &flags.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let d = SolverWeights::default();
        let weights = SolverWeights {
            alpha: flags.alpha.or(file.alpha).unwrap_or(d.alpha),
            beta: flags.beta.or(file.beta).unwrap_or(d.beta),
            capacity: flags.capacity_t.or(file.capacity_t).unwrap_or(d.capacity),
        };
        if !weights.is_valid() {
            bail!("solver weights must be finite with alpha > 0, beta >= 0 and capacity-T > 0");
        }
        let t = Thresholds::default();
        let thresholds = Thresholds {
            eps_force: flags.eps_force.or(file.eps_force).unwrap_or(t.eps_force),
            eps_torque: flags.eps_torque.or(file.eps_torque).unwrap_or(t.eps_torque),
        };
        if !(thresholds.eps_force >= 0.0 && thresholds.eps_torque >= 0.0) {
            bail!("residual thresholds must be non-negative");
        }
        let mut options = SolveOptions::default();
        if let Some(secs) = flags.time_limit.or(file.time_limit) {
            if !(secs > 0.0 && secs.is_finite()) {
                bail!("time limit must be a positive number of seconds");
            }
            options.time_limit = Duration::from_secs_f64(secs);
        }
        if let Some(n) = flags.node_limit.or(file.node_limit) {
            if n == 0 {
                bail!("node limit must be at least 1");
            }
            options.max_branch_nodes = n;
        }
        let workers = flags
            .workers
            .or(file.workers)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if workers == 0 {
            bail!("workers must be at least 1");
        }
        let catalog = match flags.catalog.as_ref().or(file.catalog.as_ref()) {
            Some(p) => {
                let bytes =
                    std::fs::read(p).with_context(|| format!("cannot read catalog {}", p.display()))?;
                parse_catalog(&bytes).with_context(|| format!("invalid catalog {}", p.display()))?
            }
            None => Catalog::standard(),
        };
        Ok(Self {
            weights,
            options,
            thresholds,
            catalog,
            workers,
            mode: flags.mode.or(file.mode).map(Mode::from),
            ground_knobs: if flags.no_ground {
                Some(false)
            } else {
                file.ground_knobs
            },
        })
    }

    /// Applies forced mode and baseplate settings to a parsed structure.
    pub fn apply(&self, assembly: &mut stackstab::Assembly) {
        if let Some(m) = self.mode {
            assembly.mode = m;
        }
        if let Some(g) = self.ground_knobs {
            assembly.ground_knobs = g;
        }
    }
}
