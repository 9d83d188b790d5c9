use std::time::Instant;

use extcheck_core::laws::{law_catalog, run_suite, Adt, SuiteProfile};
use extcheck_core::monads::{instance_by_name, InstanceConfig};

fn suite(instance: &str, sizes: [u32; 4]) -> Vec<extcheck_core::LawReport> {
    let inst = instance_by_name(instance, &InstanceConfig::default()).unwrap();
    run_suite(&inst, &SuiteProfile::new("test", instance, sizes)).unwrap()
}

#[test]
fn lawful_instances_pass_every_law_exhaustively() {
    for name in ["identity", "maybe", "nondet", "simpleprob"] {
        let start = Instant::now();
        let reports = suite(name, [2; 4]);
        assert_eq!(reports.len(), 25);
        for r in &reports {
            assert!(r.pass, "{}", r.summary_line());
            assert!(r.quantifiers.iter().all(|q| q.mode.is_exhaustive()), "{}", r.law);
        }
        eprintln!("{name}: {:?}", start.elapsed());
    }
}

#[test]
fn report_order_is_catalog_order() {
    let ids: Vec<String> = suite("maybe", [2; 4]).into_iter().map(|r| r.law).collect();
    let catalog: Vec<&str> = law_catalog().iter().map(|l| l.id).collect();
    assert_eq!(ids, catalog);
}

#[test]
fn mutants_fail_with_witnesses() {
    for name in ["mutant-a", "mutant-b"] {
        let failed: Vec<_> = suite(name, [2; 4]).into_iter().filter(|r| !r.pass).collect();
        assert!(!failed.is_empty(), "{name}");
        for r in &failed {
            assert!(r.witness.is_some());
            eprintln!("{}", r.summary_line());
        }
    }
}

#[test]
fn thin_profile_runs_22_laws() {
    let inst = instance_by_name("nondet", &InstanceConfig::default()).unwrap();
    let mut p = SuiteProfile::new("thin", "nondet", [2; 4]);
    p.adt = Adt::Thin;
    let reports = run_suite(&inst, &p).unwrap();
    assert_eq!(reports.len(), 22);
    assert!(reports.iter().all(|r| r.pass));
}
