//! Batch runner for law suites, system theorems and DP checks.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
//! configuration or usage error.

pub mod builtin;
pub mod config;
pub mod render;
pub mod runner;

use std::path::PathBuf;

use anyhow::{bail, Context};

pub use config::{Format, RunConfig};
pub use runner::{run, RunReport};

/// Command-line options after parsing.
#[derive(Clone, Debug, Default, clap::Parser)]
#[command(name = "extcheck", version, about = "Check functor, monad and dynamical-system laws over finite domains")]
pub struct Options {
    /// TOML run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// A built-in profile, or the name of one `[[suite]]` in the config.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Print the law catalog and registries, then exit.
    #[arg(long)]
    pub list: bool,
}

/// What the binary should print and how it should exit.
pub struct Execution {
    pub output: String,
    pub exit_code: u8,
}

/// Resolves the configuration the options describe, with overrides applied.
pub fn resolve(opts: &Options) -> anyhow::Result<RunConfig> {
    let mut cfg = match (&opts.config, &opts.suite) {
        (Some(path), suite) => {
            let mut cfg = RunConfig::load(path)?;
            if let Some(name) = suite {
                cfg.suites.retain(|s| &s.name == name);
                if cfg.suites.is_empty() {
                    bail!("config {} has no [[suite]] named {name:?}", path.display());
                }
                cfg.systems.clear();
                cfg.detsys.clear();
                cfg.sdps.clear();
            }
            cfg
        }
        (None, suite) => {
            let name = suite.as_deref().unwrap_or("paper-suite");
            let budget = opts.budget.unwrap_or(builtin::DEFAULT_BUDGET);
            let seed = opts.seed.unwrap_or(builtin::DEFAULT_SEED);
            builtin::profile(name, budget, seed).with_context(|| {
                let known: Vec<&str> = builtin::PROFILES.iter().map(|(n, _)| *n).collect();
                format!("unknown profile {name:?}; known: {}", known.join(", "))
            })?
        }
    };
    if let Some(seed) = opts.seed {
        cfg.global.seed = seed;
    }
    if let Some(budget) = opts.budget {
        cfg.global.budget = budget;
    }
    if let Some(jobs) = opts.jobs {
        cfg.global.jobs = Some(jobs);
    }
    if let Some(format) = opts.format {
        cfg.global.format = Some(format);
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Everything the binary does except printing and exiting.
pub fn execute(opts: &Options) -> anyhow::Result<Execution> {
    if opts.list {
        return Ok(Execution {
            output: render::catalog(),
            exit_code: 0,
        });
    }
    let cfg = resolve(opts)?;
    let jobs = cfg.global.jobs.unwrap_or_else(rayon::current_num_threads);
    let report = run(&cfg, jobs)?;
    let output = match cfg.global.format.unwrap_or_default() {
        Format::Json => render::json(&report),
        Format::Text => render::text(&report),
    };
    Ok(Execution {
        output,
        exit_code: if report.pass() { 0 } else { 1 },
    })
}
