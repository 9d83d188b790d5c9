use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use extcheck_core::dp::{self, sdp_by_name, Sdp, SdpTables};
use extcheck_core::dynsys::{self, system_by_name, DetSys, MonSys};
use extcheck_core::laws::run_suite_with;
use extcheck_core::monads::InstanceConfig;
use extcheck_core::{
    instance_by_name, monad_by_name, parse_value, Caps, FiniteType, FnTable, LawReport, Quantifier, Rational,
    SuiteProfile, Value,
};
use serde::Serialize;

use crate::config::{DetSysSpec, RunConfig, SdpSpec, SuiteSpec, SystemSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// Reports of one configured item, in execution order.
#[derive(Clone, Debug, Serialize)]
pub struct Group {
    pub kind: &'static str,
    pub id: String,
    pub reports: Vec<LawReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

/// Wall-clock data. Kept apart from everything else because it is the
/// only part of a report that varies between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub jobs: usize,
    pub total_ms: f64,
    pub groups: Vec<GroupTiming>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupTiming {
    pub kind: &'static str,
    pub id: String,
    pub ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub config: RunConfig,
    pub groups: Vec<Group>,
    pub summary: Summary,
    #[serde(rename = "timing_nondeterministic")]
    pub timing: Timing,
}

impl RunReport {
    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    pub fn reports(&self) -> impl Iterator<Item = &LawReport> {
        self.groups.iter().flat_map(|g| g.reports.iter())
    }
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

struct Env {
    inst_cfg: InstanceConfig,
    caps: Caps,
    q: Quantifier,
}

/// Runs every configured check on a pool of `jobs` threads.
pub fn run(cfg: &RunConfig, jobs: usize) -> anyhow::Result<RunReport> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let start = Instant::now();
    let (groups, timings) = pool.install(|| run_groups(cfg))?;
    let checks = groups.iter().map(|g| g.reports.len()).sum();
    let passed = groups.iter().flat_map(|g| &g.reports).filter(|r| r.pass).count();
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        tool: Tool {
            name: "extcheck",
            version: env!("CARGO_PKG_VERSION"),
        },
        config: cfg.clone(),
        groups,
        summary: Summary {
            checks,
            passed,
            failed: checks - passed,
            pass: passed == checks,
        },
        timing: Timing {
            jobs,
            total_ms: ms(start.elapsed()),
            groups: timings,
        },
    })
}

fn run_groups(cfg: &RunConfig) -> anyhow::Result<(Vec<Group>, Vec<GroupTiming>)> {
    let g = &cfg.global;
    let caps: Caps = g.caps.into();
    let env = Env {
        inst_cfg: InstanceConfig {
            max_len: g.max_len,
            max_support: g.max_support,
            env: g.env,
            caps,
        },
        caps,
        q: Quantifier::new(g.budget, g.seed),
    };
    let mut groups = Vec::new();
    let mut timings = Vec::new();
    let mut push = |kind: &'static str, id: &str, f: &dyn Fn() -> anyhow::Result<Vec<LawReport>>| {
        let start = Instant::now();
        let reports = f().with_context(|| format!("{kind} {id}"))?;
        timings.push(GroupTiming {
            kind,
            id: id.to_string(),
            ms: ms(start.elapsed()),
        });
        groups.push(Group {
            kind,
            id: id.to_string(),
            reports,
        });
        anyhow::Ok(())
    };
    for s in &cfg.suites {
        push("suite", &s.name, &|| run_suite_spec(s, &env))?;
    }
    for s in &cfg.systems {
        push("system", &s.id, &|| run_system(s, &env))?;
    }
    for s in &cfg.detsys {
        push("detsys", &s.id, &|| run_detsys(s, &env))?;
    }
    for s in &cfg.sdps {
        push("sdp", &s.id, &|| run_sdp(s, &env))?;
    }
    Ok((groups, timings))
}

fn run_suite_spec(s: &SuiteSpec, env: &Env) -> anyhow::Result<Vec<LawReport>> {
    let inst = instance_by_name(&s.instance, &env.inst_cfg)?;
    let profile = SuiteProfile {
        name: s.name.clone(),
        instance: s.instance.clone(),
        laws: s.laws.clone(),
        adt: s.adt,
        sizes: s.sizes,
        budget: s.budget.unwrap_or(env.q.budget),
        seed: s.seed.unwrap_or(env.q.seed),
    };
    Ok(run_suite_with(&inst, &profile, &env.caps)?)
}

fn build_system(s: &SystemSpec, env: &Env) -> anyhow::Result<MonSys> {
    let Some(step) = &s.step else {
        if s.states.is_some() {
            bail!("system {}: `states` given without `step`", s.id);
        }
        return Ok(system_by_name(&s.id, s.instance.as_deref(), &env.inst_cfg)?);
    };
    let instance = s.instance.as_deref().context("a custom system needs `instance`")?;
    let states = s.states.context("a custom system needs `states`")?;
    let monad = monad_by_name(instance, &env.inst_cfg)?;
    let x = FiniteType::new("X", states);
    if step.len() != states as usize {
        bail!("`step` has {} entries for {states} states", step.len());
    }
    let entries = step
        .iter()
        .map(|v| parse_value(v).with_context(|| format!("in step entry {v:?}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let table = FnTable::new(x.clone(), monad.carrier_of(extcheck_core::CarrierDesc::Base(x)), entries)?;
    Ok(MonSys::new(monad, table)?.with_caps(env.caps))
}

fn run_system(s: &SystemSpec, env: &Env) -> anyhow::Result<Vec<LawReport>> {
    let sys = build_system(s, env)?;
    let mut out = Vec::new();
    for check in &s.checks {
        match check.as_str() {
            "flowMonoid" => {
                for total in 0..=s.horizon {
                    for m in 0..=total {
                        out.push(dynsys::check_flow_monoid(&sys, m, total - m)?);
                    }
                }
            }
            name => {
                for n in 0..=s.horizon {
                    out.push(match name {
                        "flowMonLemma" => dynsys::check_flow_mon_lemma(&sys, n)?,
                        "flowMonRLem" => dynsys::check_flow_mon_r_lem(&sys, n)?,
                        "reprLemma" => dynsys::check_repr_lemma(&sys, n, &env.q)?,
                        "flowTrjLemma" => dynsys::check_flow_trj(&sys, n, &env.q)?,
                        other => bail!("unknown system check {other:?}"),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn build_detsys(s: &DetSysSpec) -> anyhow::Result<DetSys> {
    match (&s.step, s.id.as_str()) {
        (None, "inc") => Ok(dynsys::inc3()),
        (None, other) => bail!("unknown deterministic system {other:?}; give `states` and `step`"),
        (Some(step), _) => {
            let states = s.states.context("a custom deterministic system needs `states`")?;
            if step.len() != states as usize {
                bail!("`step` has {} entries for {states} states", step.len());
            }
            let x = FiniteType::new("X", states);
            let entries = step.iter().map(|&i| Value::Atom(i)).collect();
            Ok(DetSys::new(FnTable::new(
                x.clone(),
                extcheck_core::CarrierDesc::Base(x),
                entries,
            )?)?)
        }
    }
}

fn run_detsys(s: &DetSysSpec, env: &Env) -> anyhow::Result<Vec<LawReport>> {
    let sys = build_detsys(s)?;
    let mut out = Vec::new();
    for check in &s.checks {
        for n in 0..=s.horizon {
            match check.as_str() {
                "flowLemma" => out.push(dynsys::check_flow_lemma(&sys, n)?),
                "embedFlow" => {
                    for name in &s.embed {
                        let monad = monad_by_name(name, &env.inst_cfg)?;
                        out.push(dynsys::check_embed_flow(&sys, monad, n)?);
                    }
                }
                other => bail!("unknown detsys check {other:?}"),
            }
        }
    }
    Ok(out)
}

fn parse_rational(text: &str) -> anyhow::Result<Rational> {
    match parse_value(text)? {
        Value::Num(r) => Ok(r),
        other => bail!("expected a rational, got {other}"),
    }
}

fn build_sdp(s: &SdpSpec, env: &Env) -> anyhow::Result<Sdp> {
    let (Some(next), Some(reward)) = (&s.next, &s.reward) else {
        return Ok(sdp_by_name(&s.id, s.horizon, &env.inst_cfg)?);
    };
    let instance = s.instance.as_deref().context("a custom sdp needs `instance`")?;
    let measure = s.measure.context("a custom sdp needs `measure`")?;
    let states = s.states.context("a custom sdp needs `states`")?;
    let controls = s.controls.unwrap_or(1);
    let horizon = s.horizon.unwrap_or(next.len());
    let admissible = match &s.admissible {
        Some(a) => a.clone(),
        None => vec![vec![(0..controls).collect(); states as usize]; horizon],
    };
    let next = next
        .iter()
        .map(|row| {
            row.iter()
                .map(|ys| ys.iter().map(|v| Ok(parse_value(v)?)).collect::<anyhow::Result<Vec<_>>>())
                .collect::<anyhow::Result<Vec<_>>>()
        })
        .collect::<anyhow::Result<Vec<_>>>()
        .context("in `next`")?;
    let reward = reward
        .iter()
        .map(|row| {
            row.iter()
                .map(|ys| {
                    ys.iter()
                        .map(|xs| xs.iter().map(|r| parse_rational(r)).collect::<anyhow::Result<Vec<_>>>())
                        .collect::<anyhow::Result<Vec<_>>>()
                })
                .collect::<anyhow::Result<Vec<_>>>()
        })
        .collect::<anyhow::Result<Vec<_>>>()
        .context("in `reward`")?;
    let monad = monad_by_name(instance, &env.inst_cfg)?;
    Ok(Sdp::new(
        horizon,
        FiniteType::new("X", states),
        FiniteType::new("Y", controls),
        monad,
        measure,
        SdpTables {
            admissible,
            next,
            reward,
        },
    )?)
}

fn run_sdp(s: &SdpSpec, env: &Env) -> anyhow::Result<Vec<LawReport>> {
    let p = build_sdp(s, env)?;
    let mut out = Vec::new();
    for check in &s.checks {
        out.push(match check.as_str() {
            "measureShift" => dp::check_measure_shift(
                p.measure(),
                p.monad(),
                &dp::default_value_grid(),
                &dp::default_shift_grid(),
                &env.q,
                &env.caps,
            )?,
            "valEquiv" => dp::check_val_equiv_all(&p, &env.q)?,
            other => bail!("unknown sdp check {other:?}"),
        });
    }
    Ok(out)
}
