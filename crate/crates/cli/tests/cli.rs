use std::path::Path;
use std::process::{Command, Output};

use extcheck_cli::{execute, resolve, Format, Options, RunConfig};
use serde_json::Value as Json;

fn extcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extcheck")).args(args).output().expect("run extcheck")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn opts_for(config: &str) -> Options {
    Options {
        config: Some(config.into()),
        ..Options::default()
    }
}

const NONDET: &str = r#"
[global]
budget = 1000
seed = 7

[[suite]]
name = "nondet-core"
instance = "nondet"
laws = ["T1", "triangleRight", "D3"]

[[suite]]
name = "reader"
instance = "reader"
"#;

#[test]
fn unknown_instance_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "giry.toml",
        "[global]\nbudget = 10\nseed = 0\n\n[[suite]]\nname = \"g\"\ninstance = \"giry\"\n",
    );
    let out = extcheck(&["--config", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown instance \"giry\""), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_seed_is_rejected() {
    let err = RunConfig::parse("[global]\nbudget = 10\n").unwrap_err();
    assert!(format!("{err:#}").contains("seed"), "{err:#}");
}

#[test]
fn unknown_fields_and_checks_are_rejected() {
    assert!(RunConfig::parse("[global]\nbudget = 1\nseed = 0\ncolour = 1\n").is_err());
    let bad_check = "[global]\nbudget = 1\nseed = 0\n\n[[system]]\nid = \"coin-walk\"\nchecks = [\"flowLemma\"]\n";
    assert!(format!("{:#}", RunConfig::parse(bad_check).unwrap_err()).contains("unknown check"));
    let dup = "[global]\nbudget = 1\nseed = 0\n[[suite]]\nname = \"a\"\ninstance = \"maybe\"\n[[suite]]\nname = \"a\"\ninstance = \"nondet\"\n";
    assert!(format!("{:#}", RunConfig::parse(dup).unwrap_err()).contains("defined twice"));
    let custom = "[global]\nbudget = 1\nseed = 0\n[[system]]\nid = \"mine\"\n";
    assert!(RunConfig::parse(custom).is_err());
}

#[test]
fn config_defaults_are_filled() {
    let cfg = RunConfig::parse(NONDET).unwrap();
    assert_eq!(cfg.global.max_len, 2);
    assert_eq!(cfg.global.env, 2);
    assert_eq!(cfg.suites.len(), 2);
    assert_eq!(cfg.suites[0].sizes, [2; 4]);
    assert_eq!(cfg.suites[0].laws, ["T1", "triangleRight", "D3"]);
}

#[test]
fn list_shows_every_law_with_its_anchor() {
    let out = extcheck(&["--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let laws = text.lines().skip(1).take_while(|l| l.starts_with("  ")).count();
    assert_eq!(laws, 25);
    assert!(text.contains("anchor: mapPresId"));
    assert!(text.contains("instances: identity, maybe, nondet, simpleprob"));
}

#[test]
fn selected_laws_run_and_pass() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "nondet.toml", NONDET);
    let exec = execute(&opts_for(&path)).unwrap();
    assert_eq!(exec.exit_code, 0);
    let report: Json = serde_json::from_str(&exec.output).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["config"]["global"]["seed"], 7);
    let laws: Vec<&str> = report["groups"][0]["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["law"].as_str().unwrap())
        .collect();
    assert_eq!(laws, ["T1", "T2", "D3"]);
    assert_eq!(report["groups"][1]["reports"].as_array().unwrap().len(), 3);
    assert_eq!(report["summary"]["pass"], true);
}

#[test]
fn suite_flag_filters_config_suites() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "nondet.toml", NONDET);
    let cfg = resolve(&Options {
        suite: Some("reader".into()),
        seed: Some(99),
        ..opts_for(&path)
    })
    .unwrap();
    assert_eq!(cfg.suites.len(), 1);
    assert_eq!(cfg.global.seed, 99);
    let missing = Options {
        suite: Some("nope".into()),
        ..opts_for(&path)
    };
    assert!(resolve(&missing).is_err());
}

#[test]
fn unknown_profile_exits_2() {
    let out = extcheck(&["--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.txt");
    let out = extcheck(&["--suite", "reader", "--format", "text", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(out_path).unwrap();
    assert!(text.contains("PASS F1"));
    assert!(text.contains("PASS: 3 checks, 3 passed, 0 failed"));
    assert!(text.contains(extcheck_cli::render::TIMING_MARKER));
}

#[test]
fn custom_system_and_sdp_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "custom.toml",
        r#"
[global]
budget = 1000
seed = 1

[[system]]
id = "two-state-coin"
instance = "simpleprob"
states = 2
step = ["{#0: 1/3, #1: 2/3}", "{#0: 1/1}"]
horizon = 3

[[detsys]]
id = "swap"
states = 2
step = [1, 0]
embed = ["maybe"]
horizon = 4

[[sdp]]
id = "gamble"
instance = "simpleprob"
measure = "expected"
states = 2
controls = 2
horizon = 2
next = [
  [["{#0: 1/1}", "{#0: 1/2, #1: 1/2}"], ["{#1: 1/1}", "{#0: 1/1}"]],
  [["{#0: 1/1}", "{#0: 1/2, #1: 1/2}"], ["{#1: 1/1}", "{#0: 1/1}"]],
]
reward = [
  [[["0", "0"], ["0", "3"]], [["1", "1"], ["0", "0"]]],
  [[["0", "0"], ["0", "3"]], [["1", "1"], ["0", "0"]]],
]
"#,
    );
    let exec = execute(&Options {
        format: Some(Format::Json),
        ..opts_for(&path)
    })
    .unwrap();
    let report: Json = serde_json::from_str(&exec.output).unwrap();
    assert_eq!(exec.exit_code, 0, "{}", exec.output);
    let kinds: Vec<&str> = report["groups"].as_array().unwrap().iter().map(|g| g["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["system", "detsys", "sdp"]);
    let sdp = &report["groups"][2]["reports"];
    assert_eq!(sdp[0]["law"], "measureShift");
    assert_eq!(sdp[1]["law"], "valEquiv");
}

#[test]
fn malformed_custom_tables_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad.toml",
        "[global]\nbudget = 10\nseed = 0\n[[system]]\nid = \"x\"\ninstance = \"simpleprob\"\nstates = 2\nstep = [\"{#0: 1/2}\", \"{#0: 1/1}\"]\n",
    );
    let out = extcheck(&["--config", &path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn timing_is_the_only_nondeterministic_section() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "nondet.toml", NONDET);
    let run = |jobs: &str| {
        let out = extcheck(&["--config", &path, "--jobs", jobs]);
        let mut v: Json = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v["timing_nondeterministic"]["total_ms"].is_number());
        v.as_object_mut().unwrap().remove("timing_nondeterministic");
        v
    };
    assert_eq!(run("1"), run("4"));
}
