//! The TOML run configuration.
//!
//! ```toml
//! [global]
//! budget = 100000
//! seed = 0
//!
//! [[suite]]
//! name = "nondet-core"
//! instance = "nondet"
//! laws = ["T1", "triangleRight"]
//!
//! [[system]]
//! id = "branching-walk"
//! checks = ["flowMonLemma", "reprLemma"]
//! horizon = 3
//!
//! [[sdp]]
//! id = "controlled-walk"
//! horizon = 3
//! ```

use std::path::Path;

use anyhow::Context;
use extcheck_core::dp::SDP_NAMES;
use extcheck_core::dynsys::SYSTEM_NAMES;
use extcheck_core::laws::Adt;
use extcheck_core::monads::INSTANCE_NAMES;
use extcheck_core::{Caps, Measure};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub global: Global,
    #[serde(default, rename = "suite", skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteSpec>,
    #[serde(default, rename = "system", skip_serializing_if = "Vec::is_empty")]
    pub systems: Vec<SystemSpec>,
    #[serde(default, rename = "detsys", skip_serializing_if = "Vec::is_empty")]
    pub detsys: Vec<DetSysSpec>,
    #[serde(default, rename = "sdp", skip_serializing_if = "Vec::is_empty")]
    pub sdps: Vec<SdpSpec>,
}

/// Settings shared by every check. `budget` and `seed` are mandatory in
/// files so that reports never depend on hidden defaults. `format` and
/// `jobs` only affect presentation and scheduling and are not echoed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Global {
    pub budget: u64,
    pub seed: u64,
    #[serde(default, skip_serializing)]
    pub format: Option<Format>,
    #[serde(default, skip_serializing)]
    pub jobs: Option<usize>,
    #[serde(default = "two")]
    pub max_len: usize,
    #[serde(default = "two")]
    pub max_support: usize,
    #[serde(default = "two_u32")]
    pub env: u32,
    #[serde(default)]
    pub caps: CapsSpec,
}

fn two() -> usize {
    2
}

fn two_u32() -> u32 {
    2
}

impl Global {
    pub fn new(budget: u64, seed: u64) -> Self {
        Global {
            budget,
            seed,
            format: None,
            jobs: None,
            max_len: 2,
            max_support: 2,
            env: 2,
            caps: CapsSpec::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CapsSpec {
    pub max_carrier: usize,
    pub max_seq_len: usize,
    pub max_support: usize,
}

impl Default for CapsSpec {
    fn default() -> Self {
        let c = Caps::default();
        CapsSpec {
            max_carrier: c.max_carrier,
            max_seq_len: c.max_seq_len,
            max_support: c.max_support,
        }
    }
}

impl From<CapsSpec> for Caps {
    fn from(c: CapsSpec) -> Caps {
        Caps {
            max_carrier: c.max_carrier,
            max_seq_len: c.max_seq_len,
            max_support: c.max_support,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    pub name: String,
    pub instance: String,
    #[serde(default)]
    pub laws: Vec<String>,
    #[serde(default)]
    pub adt: Adt,
    #[serde(default = "default_sizes")]
    pub sizes: [u32; 4],
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

fn default_sizes() -> [u32; 4] {
    [2; 4]
}

pub const SYSTEM_CHECKS: [&str; 5] = ["flowMonLemma", "flowMonRLem", "flowMonoid", "reprLemma", "flowTrjLemma"];
pub const DETSYS_CHECKS: [&str; 2] = ["flowLemma", "embedFlow"];
pub const SDP_CHECKS: [&str; 2] = ["measureShift", "valEquiv"];

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// A monadic system: a built-in id, or `instance` + `states` + `step`
/// with one canonical value per state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub id: String,
    pub instance: Option<String>,
    pub states: Option<u32>,
    pub step: Option<Vec<String>>,
    #[serde(default = "system_checks")]
    pub checks: Vec<String>,
    #[serde(default = "three")]
    pub horizon: usize,
}

fn system_checks() -> Vec<String> {
    names(&SYSTEM_CHECKS)
}

fn three() -> usize {
    3
}

/// A deterministic system: `inc`, or `states` + `step` as successor indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetSysSpec {
    pub id: String,
    pub states: Option<u32>,
    pub step: Option<Vec<u32>>,
    #[serde(default = "detsys_checks")]
    pub checks: Vec<String>,
    #[serde(default = "lawful")]
    pub embed: Vec<String>,
    #[serde(default = "five")]
    pub horizon: usize,
}

fn detsys_checks() -> Vec<String> {
    names(&DETSYS_CHECKS)
}

fn lawful() -> Vec<String> {
    names(&["identity", "maybe", "nondet", "simpleprob"])
}

fn five() -> usize {
    5
}

/// A decision problem: a built-in id, or explicit tables. `next` entries
/// are canonical values and `reward` entries rationals such as `"1/2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SdpSpec {
    pub id: String,
    pub horizon: Option<usize>,
    #[serde(default = "sdp_checks")]
    pub checks: Vec<String>,
    pub instance: Option<String>,
    pub measure: Option<Measure>,
    pub states: Option<u32>,
    pub controls: Option<u32>,
    pub admissible: Option<Vec<Vec<Vec<u32>>>>,
    pub next: Option<Vec<Vec<Vec<String>>>>,
    pub reward: Option<Vec<Vec<Vec<Vec<String>>>>>,
}

fn sdp_checks() -> Vec<String> {
    names(&SDP_CHECKS)
}

impl RunConfig {
    pub fn empty(global: Global) -> Self {
        RunConfig {
            global,
            suites: Vec::new(),
            systems: Vec::new(),
            detsys: Vec::new(),
            sdps: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        RunConfig::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    /// Checks names that serde cannot: check lists and duplicate ids.
    pub fn validate(&self) -> anyhow::Result<()> {
        let known = |field: &str, id: &str, checks: &[String], allowed: &[&str]| -> anyhow::Result<()> {
            for c in checks {
                if !allowed.contains(&c.as_str()) {
                    anyhow::bail!("{field} {id}: unknown check {c:?}; known: {}", allowed.join(", "));
                }
            }
            Ok(())
        };
        for s in &self.systems {
            known("system", &s.id, &s.checks, &SYSTEM_CHECKS)?;
        }
        for s in &self.detsys {
            known("detsys", &s.id, &s.checks, &DETSYS_CHECKS)?;
        }
        for s in &self.sdps {
            known("sdp", &s.id, &s.checks, &SDP_CHECKS)?;
        }
        let instance = |field: &str, id: &str, name: &str| -> anyhow::Result<()> {
            if !INSTANCE_NAMES.contains(&name) {
                anyhow::bail!("{field} {id}: unknown instance {name:?}; known: {}", INSTANCE_NAMES.join(", "));
            }
            Ok(())
        };
        for s in &self.suites {
            instance("suite", &s.name, &s.instance)?;
        }
        for s in &self.systems {
            if let Some(name) = &s.instance {
                instance("system", &s.id, name)?;
            }
            if s.step.is_none() && !SYSTEM_NAMES.contains(&s.id.as_str()) {
                anyhow::bail!("system {}: not built in and no `step` given", s.id);
            }
        }
        for s in &self.detsys {
            for name in &s.embed {
                instance("detsys", &s.id, name)?;
            }
        }
        for s in &self.sdps {
            if let Some(name) = &s.instance {
                instance("sdp", &s.id, name)?;
            }
            if s.next.is_none() && !SDP_NAMES.contains(&s.id.as_str()) {
                anyhow::bail!("sdp {}: not built in and no `next`/`reward` tables given", s.id);
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in self.suites.iter().map(|s| &s.name) {
            if !seen.insert(name) {
                anyhow::bail!("suite {name:?} is defined twice");
            }
        }
        if self.global.jobs == Some(0) {
            anyhow::bail!("global.jobs must be at least 1");
        }
        Ok(())
    }
}
