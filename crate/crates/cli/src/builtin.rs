//! Built-in run profiles, selectable with `--suite` when no config is given.

use crate::config::{
    DetSysSpec, Global, RunConfig, SdpSpec, SuiteSpec, SystemSpec, DETSYS_CHECKS, SDP_CHECKS, SYSTEM_CHECKS,
};

pub const PROFILES: [(&str, &str); 5] = [
    ("paper-suite", "all 25 laws on identity, maybe, nondet and simpleprob"),
    ("reader", "functor laws on the Reader functor"),
    ("theorems", "flow, representation, trajectory and DP theorems on the built-in systems"),
    ("mutants", "laws and theorems on the deliberately broken instances (expected to fail)"),
    ("all", "paper-suite, reader and theorems together"),
];

pub const DEFAULT_BUDGET: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0;

fn suite(name: &str, instance: &str) -> SuiteSpec {
    SuiteSpec {
        name: name.to_string(),
        instance: instance.to_string(),
        laws: Vec::new(),
        adt: Default::default(),
        sizes: [2; 4],
        budget: None,
        seed: None,
    }
}

fn system(id: &str, instance: Option<&str>, horizon: usize) -> SystemSpec {
    SystemSpec {
        id: id.to_string(),
        instance: instance.map(str::to_string),
        states: None,
        step: None,
        checks: SYSTEM_CHECKS.iter().map(|s| s.to_string()).collect(),
        horizon,
    }
}

fn sdp(id: &str, horizon: usize) -> SdpSpec {
    SdpSpec {
        id: id.to_string(),
        horizon: Some(horizon),
        checks: SDP_CHECKS.iter().map(|s| s.to_string()).collect(),
        instance: None,
        measure: None,
        states: None,
        controls: None,
        admissible: None,
        next: None,
        reward: None,
    }
}

fn paper_suite(cfg: &mut RunConfig) {
    for inst in ["identity", "maybe", "nondet", "simpleprob"] {
        cfg.suites.push(suite(&format!("paper/{inst}"), inst));
    }
}

fn reader(cfg: &mut RunConfig) {
    cfg.suites.push(suite("reader", "reader"));
}

fn theorems(cfg: &mut RunConfig) {
    for id in ["inc", "partial-walk", "branching-walk", "coin-walk", "lazy-walk"] {
        cfg.systems.push(system(id, None, 4));
    }
    cfg.detsys.push(DetSysSpec {
        id: "inc".into(),
        states: None,
        step: None,
        checks: DETSYS_CHECKS.iter().map(|s| s.to_string()).collect(),
        embed: ["identity", "maybe", "nondet", "simpleprob"].map(String::from).to_vec(),
        horizon: 5,
    });
    for id in ["coin", "walk-max", "controlled-walk", "controlled-branch", "ledger"] {
        cfg.sdps.push(sdp(id, 4));
    }
}

fn mutants(cfg: &mut RunConfig) {
    cfg.suites.push(suite("mutant-a", "mutant-a"));
    cfg.suites.push(suite("mutant-b", "mutant-b"));
    cfg.systems.push(system("branching-walk", Some("mutant-a"), 2));
    cfg.sdps.push(sdp("stopping", 2));
}

/// The named profile with the given budget and seed.
pub fn profile(name: &str, budget: u64, seed: u64) -> Option<RunConfig> {
    let mut cfg = RunConfig::empty(Global::new(budget, seed));
    match name {
        "paper-suite" => paper_suite(&mut cfg),
        "reader" => reader(&mut cfg),
        "theorems" => theorems(&mut cfg),
        "mutants" => mutants(&mut cfg),
        "all" => {
            paper_suite(&mut cfg);
            reader(&mut cfg);
            theorems(&mut cfg);
        }
        _ => return None,
    }
    Some(cfg)
}
