//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdict lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use extcheck_core::dp::{
    check_measure_shift, check_val_equiv_all, default_shift_grid, default_value_grid, sdp_by_name,
    Measure,
};
use extcheck_core::dynsys::{
    self, check_flow_mon_lemma, check_flow_monoid, check_flow_trj, check_repr_lemma, embed, flow, flow_det_left,
    flow_det_right, flow_right, inc3, system_by_name, total_weight, trj, DetSys, MonSys,
};
use extcheck_core::laws::run_suite_with;
use extcheck_core::monads::{reader_functor, InstanceConfig};
use extcheck_core::table::enumerate_functions_with;
use extcheck_core::{
    enumerate_carrier, enumerate_domain, ext_eq, extify_eq, instance_by_name, monad_by_name, Caps, CarrierDesc,
    FiniteType, FnTable, Functor, Quantifier, Rational, SuiteProfile, Value,
};
use serde_json::Value as Json;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cfg() -> InstanceConfig {
    InstanceConfig::default()
}

fn system(name: &str) -> MonSys {
    system_by_name(name, None, &cfg()).expect("built-in system")
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool").install(f)
}

fn law_suite_soundness() -> Result<String, String> {
    let start = Instant::now();
    let mut total = 0;
    single_threaded(|| {
        for name in ["identity", "maybe", "nondet", "simpleprob"] {
            let inst = ok(instance_by_name(name, &cfg()))?;
            let profile = SuiteProfile::new(name, name, [2; 4]);
            let reports = ok(run_suite_with(&inst, &profile, &Caps::default()))?;
            ensure(reports.len() == 25, format!("{name}: {} laws", reports.len()))?;
            for r in &reports {
                ensure(r.pass, format!("{name} {} failed: {}", r.law, r.summary_line()))?;
                ensure(
                    r.quantifiers.iter().all(|q| q.mode.is_exhaustive()),
                    format!("{name} {} was sampled", r.law),
                )?;
            }
            total += reports.len();
        }
        Ok::<_, String>(())
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{total} law checks exhaustive and passing in {:.1}s on one thread", elapsed.as_secs_f64()))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_extcheck")).args(args).output().expect("run extcheck");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 report"))
}

fn failing<'a>(report: &'a Json, instance: &str) -> Vec<&'a Json> {
    report["groups"]
        .as_array()
        .into_iter()
        .flatten()
        .flat_map(|g| g["reports"].as_array().into_iter().flatten())
        .filter(|r| r["instance"] == instance && r["pass"] == false)
        .collect()
}

fn mutation_sensitivity() -> Result<String, String> {
    let (code, stdout) = run_cli(&["--suite", "mutants", "--format", "json"]);
    ensure(code == 1, format!("exit code {code}"))?;
    let report: Json = ok(serde_json::from_str(&stdout))?;
    let a = failing(&report, "mutant-a");
    let t2 = a.iter().find(|r| r["law"] == "T2").ok_or("mutant-a passed T2")?;
    let bindings = t2["witness"]["bindings"].as_array().ok_or("T2 has no witness")?;
    ensure(
        bindings.contains(&serde_json::json!(["ma", "[#0,#1]"])),
        format!("T2 witness {}", t2["witness"]),
    )?;
    let b = failing(&report, "mutant-b");
    let with_witness = b.iter().filter(|r| r["witness"]["lhs"].is_string()).count();
    ensure(with_witness > 0, "mutant-b failed nothing with a witness")?;
    Ok(format!(
        "exit 1; mutant-a T2 witness ma=[#0,#1]; mutant-b fails {} laws/theorems with witnesses",
        with_witness
    ))
}

fn det_flow_equality() -> Result<String, String> {
    let start = Instant::now();
    let x = FiniteType::new("X", 3);
    let (tables, _) = ok(enumerate_functions_with(
        &x,
        &CarrierDesc::Base(x.clone()),
        &Quantifier::exhaustive(),
        &Caps::default(),
    ))?;
    let mut compared = 0;
    for t in tables {
        let s = ok(DetSys::new(t))?;
        for n in 0..=5 {
            ensure(ok(flow_det_left(&s, n))? == ok(flow_det_right(&s, n))?, format!("{s:?} n={n}"))?;
            compared += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(compared == 162, format!("{compared} comparisons"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("{compared} table comparisons in {:.3}s", elapsed.as_secs_f64()))
}

fn fixed_systems() -> Result<Vec<MonSys>, String> {
    Ok(vec![
        system("branching-walk"),
        system("coin-walk"),
        ok(embed(&inc3(), ok(monad_by_name("identity", &cfg()))?))?,
        ok(embed(&inc3(), ok(monad_by_name("maybe", &cfg()))?))?,
    ])
}

fn monadic_flow_equality() -> Result<String, String> {
    let mut checked = 0;
    for s in fixed_systems()? {
        for n in 0..=4 {
            ensure(ok(flow(&s, n))? == ok(flow_right(&s, n))?, format!("{s:?} n={n}"))?;
            let r = ok(check_flow_mon_lemma(&s, n))?;
            ensure(r.pass, r.summary_line())?;
            checked += r.checked;
        }
    }
    Ok(format!("flow = flow_right on 4 systems, n <= 4 ({checked} states)"))
}

fn monoid_morphism() -> Result<String, String> {
    let mut cases = 0;
    for s in fixed_systems()? {
        for total in 0..=4 {
            for m in 0..=total {
                let r = ok(check_flow_monoid(&s, m, total - m))?;
                ensure(r.pass, r.summary_line())?;
                cases += 1;
            }
        }
    }
    Ok(format!("flow 0 = pure and flow (m+n) = flow m >=> flow n in {cases} cases"))
}

fn representation_theorem() -> Result<String, String> {
    let q = Quantifier::exhaustive();
    let mut values = 0;
    for s in [system("partial-walk"), system("coin-walk"), system("lazy-walk")] {
        let carrier = ok(enumerate_carrier(&dynsys::repr(&s).carrier()))?;
        for n in 0..=4 {
            let r = ok(check_repr_lemma(&s, n, &q))?;
            ensure(r.pass, r.summary_line())?;
            ensure(r.checked == carrier.len() as u64, format!("checked {} of {}", r.checked, carrier.len()))?;
            values += r.checked;
        }
    }
    Ok(format!("reprLemma on maybe and simpleprob systems, n <= 4, {values} carrier values"))
}

fn flow_trajectory_theorem() -> Result<String, String> {
    let q = Quantifier::exhaustive();
    let walk = system("branching-walk");
    for n in 0..=3 {
        let r = ok(check_flow_trj(&walk, n, &q))?;
        ensure(r.pass, r.summary_line())?;
        for x in enumerate_domain(walk.states()) {
            let Value::Seq(paths) = ok(trj(&walk, n, &x))? else {
                return Err("nondet trj is not a sequence".into());
            };
            ensure(paths.len() == 1 << n, format!("{} paths at n={n}", paths.len()))?;
        }
    }
    let one = Rational::from_integer(1.into());
    for name in ["coin-walk", "lazy-walk"] {
        let s = system(name);
        for n in 0..=3 {
            let r = ok(check_flow_trj(&s, n, &q))?;
            ensure(r.pass, r.summary_line())?;
            for x in enumerate_domain(s.states()) {
                ensure(ok(total_weight(&ok(trj(&s, n, &x))?))? == one, format!("{name} weight at n={n}"))?;
            }
        }
    }
    Ok("flow = map last . trj for nondet (8 paths at n=3) and simpleprob, weights exactly 1".into())
}

fn dp_equivalence() -> Result<String, String> {
    let q = Quantifier::exhaustive();
    let mut policies = 0;
    for name in ["coin", "walk-max", "controlled-walk", "controlled-branch"] {
        for horizon in 0..=4 {
            let p = ok(sdp_by_name(name, Some(horizon), &cfg()))?;
            ensure(p.states().size <= 3 && p.controls().size <= 2, "sdp too large")?;
            let r = ok(check_val_equiv_all(&p, &q))?;
            ensure(r.pass, r.summary_line())?;
            policies += p.policy_sequences().len();
        }
    }
    let maybe = ok(monad_by_name("maybe", &cfg()))?;
    let shift = ok(check_measure_shift(
        Measure::DefaultZero,
        maybe.as_ref(),
        &default_value_grid(),
        &default_shift_grid(),
        &q,
        &Caps::default(),
    ))?;
    let w = shift.witness.as_ref().ok_or("default-zero passed the shift check")?;
    ensure((w.get("m"), w.get("c")) == (Some("none"), Some("1")), format!("witness {w:?}"))?;
    let stopping = ok(sdp_by_name("stopping", Some(2), &cfg()))?;
    let refused = ok(check_val_equiv_all(&stopping, &q))?;
    ensure(!refused.pass && refused.note.is_some(), "maybe sdp was not refused")?;
    Ok(format!("val = val' over {policies} policy sequences; default-zero refused with (none, c=1)"))
}

fn reader_boundary() -> Result<String, String> {
    let e = FiniteType::new("E", 2);
    let a = FiniteType::new("A", 2);
    let reader = reader_functor(e.clone());
    let ra = reader.carrier_of(CarrierDesc::Base(a.clone()));
    let rs = ok(enumerate_carrier(&ra))?;
    let r_index = FiniteType::new("R", rs.len() as u32);
    let (fs, _) = ok(enumerate_functions_with(
        &a,
        &CarrierDesc::Base(a.clone()),
        &Quantifier::exhaustive(),
        &Caps::default(),
    ))?;
    let map_r = |f: &FnTable| {
        let call = |x: &Value| f.apply(x);
        FnTable::tabulate(&r_index, &ra, |i| reader.map(&call, &rs[i.as_atom()? as usize]))
    };
    let mut pairs = 0;
    for f in &fs {
        for g in fs.iter().filter(|g| ok(ext_eq(f, g)).map(|r| r.equal).unwrap_or(false)) {
            let (mf, mg) = (ok(map_r(f))?, ok(map_r(g))?);
            ensure(ok(ext_eq(&mf, &mg))?.equal, "level-1 ext_eq rejected mapR f, mapR g")?;
            let level2 = ok(extify_eq(2, &mf.to_value(), &mg.to_value()))?;
            ensure(level2.equal, "level-2 extify_eq rejected mapR f, mapR g")?;
            ensure(level2.checked == (rs.len() * e.size as usize) as u64, "level 2 did not reach E")?;
            pairs += 1;
        }
    }
    let inst = ok(instance_by_name("reader", &cfg()))?;
    let reports = ok(run_suite_with(&inst, &SuiteProfile::new("reader", "reader", [2; 4]), &Caps::default()))?;
    ensure(reports.len() == 3 && reports.iter().all(|r| r.pass), "reader F1-F3")?;
    Ok(format!("{pairs} pairs f = g over {} reader values at levels 1 and 2; F1-F3 pass", rs.len()))
}

fn strip_timing(json: &str) -> Result<Json, String> {
    let mut v: Json = ok(serde_json::from_str(json))?;
    v.as_object_mut().ok_or("report is not an object")?.remove("timing_nondeterministic");
    Ok(v)
}

fn determinism() -> Result<String, String> {
    let dir = ok(tempfile::tempdir())?;
    let config = dir.path().join("run.toml");
    ok(std::fs::write(
        &config,
        r#"
[global]
budget = 20
seed = 42

[[suite]]
name = "sampled-simpleprob"
instance = "simpleprob"
laws = ["F2", "KJ", "D3", "W3"]

[[suite]]
name = "mutant-b"
instance = "mutant-b"

[[system]]
id = "lazy-walk"
horizon = 3

[[sdp]]
id = "controlled-branch"
horizon = 3
"#,
    ))?;
    let path = config.to_str().ok_or("temp path")?;
    let mut runs = Vec::new();
    for jobs in ["1", "8", "8"] {
        let out = dir.path().join(format!("report-{}.json", runs.len()));
        let (code, _) = run_cli(&["--config", path, "--jobs", jobs, "--out", out.to_str().ok_or("temp path")?]);
        ensure(code == 1, format!("exit code {code} with --jobs {jobs}"))?;
        runs.push(ok(std::fs::read_to_string(out))?);
    }
    let det: Vec<Json> = runs.iter().map(|r| strip_timing(r)).collect::<Result<_, _>>()?;
    ensure(det[0] == det[1] && det[1] == det[2], "deterministic sections differ")?;
    let bytes: Vec<String> = det.iter().map(|d| serde_json::to_string_pretty(d).unwrap()).collect();
    ensure(bytes[0] == bytes[1] && bytes[1] == bytes[2], "deterministic bytes differ")?;
    let sampled = det[0]["groups"][0]["reports"]
        .as_array()
        .into_iter()
        .flatten()
        .flat_map(|r| r["quantifiers"].as_array().into_iter().flatten())
        .any(|q| q["mode"] == "sampled");
    ensure(sampled, "config exercised no sampled quantifier")?;
    Ok("identical deterministic sections for --jobs 1, 8, 8 including sampled quantifiers".into())
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("law-suite soundness", law_suite_soundness),
        ("mutation sensitivity", mutation_sensitivity),
        ("deterministic-flow equality", det_flow_equality),
        ("monadic-flow equality", monadic_flow_equality),
        ("monoid morphism", monoid_morphism),
        ("representation theorem", representation_theorem),
        ("flow/trajectory theorem", flow_trajectory_theorem),
        ("DP equivalence", dp_equivalence),
        ("Reader boundary case", reader_boundary),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
