use std::sync::Arc;

use extcheck_core::dp::{
    check_measure_shift, check_val_equiv, check_val_equiv_all, default_shift_grid, default_value_grid, sdp_by_name,
    trajectories, val, val_counted, val_spec, val_spec_counted, Measure, Policy, Sdp, SdpTables,
};
use extcheck_core::monads::InstanceConfig;
use extcheck_core::{monad_by_name, parse_value, Caps, Error, FiniteType, Monad, Quantifier, Rational, Value};
use num::Zero;

fn monad(name: &str) -> Arc<dyn Monad> {
    monad_by_name(name, &InstanceConfig::default()).unwrap()
}

fn sdp(name: &str, horizon: Option<usize>) -> Sdp {
    sdp_by_name(name, horizon, &InstanceConfig::default()).unwrap()
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn constant(p: &Sdp, y: u32, len: usize) -> Vec<Policy> {
    vec![vec![y; p.states().size as usize]; len]
}

fn q() -> Quantifier {
    Quantifier::exhaustive()
}

#[test]
fn empty_policy_sequence_is_worth_zero() {
    for name in ["coin", "walk-max", "controlled-walk", "controlled-branch", "stopping", "ledger"] {
        let p = sdp(name, None);
        for x in 0..p.states().size {
            assert!(val(&p, &[], 0, x).unwrap().is_zero());
            assert!(val_spec(&p, &[], 0, x).unwrap().is_zero());
        }
        assert!(check_val_equiv(&p, &[], &q()).unwrap().pass || p.measure() == Measure::DefaultZero);
    }
}

#[test]
fn coin_expected_value() {
    let p = sdp("coin", Some(1));
    let ps = constant(&p, 0, 1);
    for x in 0..2 {
        assert_eq!(val(&p, &ps, 0, x).unwrap(), r(1, 2));
        assert_eq!(val_spec(&p, &ps, 0, x).unwrap(), r(1, 2));
    }
}

#[test]
fn walk_max_best_two_step_sum() {
    let p = sdp("walk-max", Some(2));
    let ps = constant(&p, 0, 2);
    assert_eq!(val(&p, &ps, 0, 0).unwrap(), r(3, 1));
    assert_eq!(val_spec(&p, &ps, 0, 0).unwrap(), r(3, 1));
    let paths = trajectories(&p, &ps, 0, 0).unwrap();
    assert_eq!(paths, parse_value("[<#0,#0,#0>,<#0,#0,#1>,<#0,#1,#1>,<#0,#1,#2>]").unwrap());
}

#[test]
fn identity_point_measure_is_a_plain_fold() {
    let p = sdp("ledger", Some(3));
    let ps = constant(&p, 0, 3);
    for x in 0..3u32 {
        let direct: Rational = (1..=3).map(|k| Rational::from_integer(((x + k) % 3).into())).sum();
        assert_eq!(val(&p, &ps, 0, x).unwrap(), direct);
        assert_eq!(val_spec(&p, &ps, 0, x).unwrap(), direct);
    }
}

#[test]
fn val_equiv_over_all_policies() {
    for name in ["coin", "walk-max", "controlled-walk", "controlled-branch", "ledger"] {
        for horizon in 0..=4 {
            let p = sdp(name, Some(horizon));
            let report = check_val_equiv_all(&p, &q()).unwrap();
            assert!(report.pass, "{name} h={horizon}: {}", report.summary_line());
            assert_eq!(report.checked, p.policy_sequences().len() as u64 * p.states().size as u64);
        }
    }
}

#[test]
fn measure_shift_examples() {
    let values = default_value_grid();
    let grid = default_shift_grid();
    let caps = Caps::default();
    assert!(check_measure_shift(Measure::Expected, monad("simpleprob").as_ref(), &values, &grid, &q(), &caps)
        .unwrap()
        .pass);
    assert!(check_measure_shift(Measure::Max, monad("nondet").as_ref(), &values, &grid, &q(), &caps).unwrap().pass);
    assert!(check_measure_shift(Measure::Min, monad("nondet").as_ref(), &values, &grid, &q(), &caps).unwrap().pass);
    assert!(check_measure_shift(Measure::Point, monad("identity").as_ref(), &values, &grid, &q(), &caps)
        .unwrap()
        .pass);

    let report =
        check_measure_shift(Measure::DefaultZero, monad("maybe").as_ref(), &values, &grid, &q(), &caps).unwrap();
    assert!(!report.pass);
    let w = report.witness.unwrap();
    assert_eq!((w.get("m"), w.get("c")), (Some("none"), Some("1")));
    assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("0", "1"));
}

#[test]
fn shift_incompatible_measure_is_refused() {
    let p = sdp("stopping", Some(2));
    let report = check_val_equiv(&p, &constant(&p, 0, 2), &q()).unwrap();
    assert!(!report.pass);
    assert_eq!(report.law, "valEquiv");
    assert!(report.note.unwrap().contains("not shift-compatible"));
    assert_eq!(report.witness.unwrap().get("m"), Some("none"));
    assert!(!check_val_equiv_all(&p, &q()).unwrap().pass);
}

#[test]
fn measure_call_counts() {
    // Binary branching: val measures once per internal node of the tree.
    let p = sdp("walk-max", Some(4));
    for n in 0..=4 {
        let ps = constant(&p, 0, n);
        let (_, backward) = val_counted(&p, &ps, 0, 0).unwrap();
        let (_, spec) = val_spec_counted(&p, &ps, 0, 0).unwrap();
        assert_eq!(backward.measure_calls, (1u64 << n) - 1);
        assert_eq!(spec.measure_calls, 1);
    }
}

#[test]
fn inadmissible_policy_is_a_config_error() {
    let p = sdp("controlled-walk", Some(1));
    let bad: Vec<Policy> = vec![vec![1, 1, 1]];
    assert!(matches!(val(&p, &bad, 0, 2), Err(Error::Config(_))));
    assert!(matches!(val(&p, &constant(&p, 0, 2), 0, 0), Err(Error::Usage(_))));
}

#[test]
fn sdp_validation() {
    let x = FiniteType::new("X", 2);
    let y = FiniteType::new("Y", 1);
    let tables = |next: &str| SdpTables {
        admissible: vec![vec![vec![0], vec![0]]],
        next: vec![vec![vec![parse_value(next).unwrap()], vec![parse_value("[#0]").unwrap()]]],
        reward: vec![vec![vec![vec![Rational::zero(); 2]]; 2]],
    };
    let build = |m: &str, meas: Measure, next: &str| Sdp::new(1, x.clone(), y.clone(), monad(m), meas, tables(next));
    assert!(build("nondet", Measure::Max, "[#1]").is_ok());
    assert!(matches!(build("nondet", Measure::Max, "[]"), Err(Error::Config(_))));
    assert!(matches!(build("nondet", Measure::Max, "[#5]"), Err(Error::Config(_))));
    assert!(matches!(build("simpleprob", Measure::Expected, "[#0]"), Err(Error::Config(_))));

    let mut empty = tables("[#1]");
    empty.admissible[0][1].clear();
    assert!(matches!(
        Sdp::new(1, x.clone(), y.clone(), monad("nondet"), Measure::Max, empty),
        Err(Error::Config(_))
    ));
}

#[test]
fn measure_names_round_trip() {
    for m in [Measure::Expected, Measure::Max, Measure::Min, Measure::DefaultZero, Measure::Point] {
        assert_eq!(m.name().parse::<Measure>().unwrap(), m);
    }
    assert!("argmax".parse::<Measure>().is_err());
    assert!(!Measure::Max.defined_on(&Value::Seq(vec![])));
}
