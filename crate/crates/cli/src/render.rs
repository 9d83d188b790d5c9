use std::fmt::Write;

use extcheck_core::dp::{MEASURE_NAMES, SDP_NAMES};
use extcheck_core::dynsys::SYSTEM_NAMES;
use extcheck_core::law_catalog;
use extcheck_core::monads::INSTANCE_NAMES;

use crate::builtin::PROFILES;
use crate::runner::RunReport;

/// Marks the start of the timing section in text reports; everything
/// before it is deterministic.
pub const TIMING_MARKER: &str = "# timing (non-deterministic)";

pub fn json(report: &RunReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn text(report: &RunReport) -> String {
    let mut out = String::new();
    let cfg = &report.config.global;
    let _ = writeln!(
        out,
        "{} {} (report schema {})",
        report.tool.name, report.tool.version, report.schema_version
    );
    let _ = writeln!(
        out,
        "budget={} seed={} max_len={} max_support={} env={}",
        cfg.budget, cfg.seed, cfg.max_len, cfg.max_support, cfg.env
    );
    for g in &report.groups {
        let _ = writeln!(out, "\n== {} {}", g.kind, g.id);
        for r in &g.reports {
            let mut line = r.summary_line();
            if !r.params.is_empty() {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                line.push_str(&format!(" [{}]", params.join(" ")));
            }
            let _ = writeln!(out, "{line}");
        }
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "\n{}: {} checks, {} passed, {} failed",
        if s.pass { "PASS" } else { "FAIL" },
        s.checks,
        s.passed,
        s.failed
    );
    let t = &report.timing;
    let _ = writeln!(out, "\n{TIMING_MARKER}");
    let _ = writeln!(out, "jobs={} total_ms={}", t.jobs, t.total_ms);
    for g in &t.groups {
        let _ = writeln!(out, "{} {} ms={}", g.kind, g.id, g.ms);
    }
    out
}

/// Laws with their lemma-name anchors, then everything addressable by name.
pub fn catalog() -> String {
    let mut out = String::from("laws:\n");
    for law in law_catalog() {
        let _ = writeln!(
            out,
            "  {:<4} {:<22} {:<44} [{:?}; anchor: {}]",
            law.id, law.name, law.statement, law.requires, law.name
        );
    }
    let theorems = [
        ("compPresEE", "f ≐ f' -> g ≐ g' -> g ∘ f ≐ g' ∘ f'"),
        ("flowLemma", "flowL f n = flowR f n"),
        ("embedFlow", "flow (pure ∘ f) n ≐ pure ∘ flowDet f n"),
        ("flowMonLemma", "flowMonL f n ≐ flowMonR f n"),
        ("flowMonRLem", "(flowMonR f n >=> f) ≐ (f >=> flowMonR f n)"),
        ("flowMonoid", "flow f Z ≐ pure; flow f (m + n) ≐ flow f m >=> flow f n"),
        ("reprLemma", "repr (flow f n) ≐ flowDet (repr f) n"),
        ("flowTrjLemma", "flow f n ≐ map last ∘ trj f n"),
        ("measureShift", "meas (map (c +) m) = c + meas m"),
        ("valEquiv", "val ps ≐ val' ps"),
    ];
    out.push_str("theorems:\n");
    for (id, statement) in theorems {
        let _ = writeln!(out, "  {id:<13} {statement}");
    }
    let list = |out: &mut String, title: &str, names: &[&str]| {
        let _ = writeln!(out, "{title}: {}", names.join(", "));
    };
    list(&mut out, "instances", &INSTANCE_NAMES);
    list(&mut out, "systems", &SYSTEM_NAMES);
    list(&mut out, "sdps", &SDP_NAMES);
    list(&mut out, "measures", &MEASURE_NAMES);
    out.push_str("profiles:\n");
    for (name, about) in PROFILES {
        let _ = writeln!(out, "  {name:<12} {about}");
    }
    out
}
