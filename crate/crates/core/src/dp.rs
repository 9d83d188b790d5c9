//! Finite-horizon sequential decision problems and policy evaluation.
//!
//! `val` is backward induction: the measure is applied at every node of the
//! recursion. `val_spec` builds the M-structure of every control-resolved
//! trajectory, sums rewards along each one and applies the measure once. The
//! two agree whenever the measure commutes with adding a constant, which
//! [`check_measure_shift`] decides over a finite grid before
//! [`check_val_equiv`] claims anything.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::carrier::{enumerate_carrier_with, Caps, CarrierDesc, FiniteType};
use crate::error::{Error, Result};
use crate::monads::{monad_by_name, InstanceConfig, Monad};
use crate::quant::{search, Binder, Mismatch, Mode, Quantifier};
use crate::report::LawReport;
use crate::value::{Rational, Value};

/// Reductions `M Q -> Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    /// Expected value of a distribution.
    Expected,
    /// Largest element of a non-empty sequence.
    Max,
    /// Smallest element of a non-empty sequence.
    Min,
    /// The optional value, or zero for `none`. Not shift-compatible.
    DefaultZero,
    /// The value itself, for the identity monad.
    Point,
}

pub const MEASURE_NAMES: [&str; 5] = ["expected", "max", "min", "default-zero", "point"];

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::Expected => "expected",
            Measure::Max => "max",
            Measure::Min => "min",
            Measure::DefaultZero => "default-zero",
            Measure::Point => "point",
        }
    }

    /// Whether the measure yields a value on `mr` (max and min need a
    /// non-empty sequence).
    pub fn defined_on(&self, mr: &Value) -> bool {
        match (self, mr) {
            (Measure::Expected, Value::Dist(_)) | (Measure::DefaultZero, Value::Opt(_)) => true,
            (Measure::Max | Measure::Min, Value::Seq(xs)) => !xs.is_empty(),
            (Measure::Point, Value::Num(_)) => true,
            _ => false,
        }
    }

    pub fn apply(&self, mr: &Value) -> Result<Rational> {
        let num = |v: &Value| v.as_num().cloned();
        match (self, mr) {
            (Measure::Expected, Value::Dist(entries)) => {
                entries.iter().try_fold(Rational::zero(), |acc, (v, w)| Ok(acc + num(v)? * w))
            }
            (Measure::Max | Measure::Min, Value::Seq(xs)) => {
                let mut vals = xs.iter().map(num);
                let first = vals
                    .next()
                    .ok_or_else(|| Error::Usage(format!("{} of an empty sequence", self.name())))??;
                vals.try_fold(first, |acc, v| {
                    let v = v?;
                    Ok(if (*self == Measure::Max) == (v > acc) { v } else { acc })
                })
            }
            (Measure::DefaultZero, Value::Opt(inner)) => match inner {
                None => Ok(Rational::zero()),
                Some(v) => num(v),
            },
            (Measure::Point, v @ Value::Num(_)) => num(v),
            (_, other) => Err(Error::Usage(format!("measure {} is undefined on {other}", self.name()))),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "expected" => Measure::Expected,
            "max" => Measure::Max,
            "min" => Measure::Min,
            "default-zero" => Measure::DefaultZero,
            "point" => Measure::Point,
            other => {
                return Err(Error::Config(format!(
                    "unknown measure {other:?}; known: {}",
                    MEASURE_NAMES.join(", ")
                )))
            }
        })
    }
}

/// A policy: the control chosen in each state, indexed by state.
pub type Policy = Vec<u32>;

/// Explicit tables of a decision problem, indexed by time first.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpTables {
    /// `[t][x]`: admissible controls.
    pub admissible: Vec<Vec<Vec<u32>>>,
    /// `[t][x][y]`: successor structure; ignored for inadmissible `y`.
    pub next: Vec<Vec<Vec<Value>>>,
    /// `[t][x][y][x']`.
    pub reward: Vec<Vec<Vec<Vec<Rational>>>>,
}

#[derive(Clone)]
pub struct Sdp {
    horizon: usize,
    states: FiniteType,
    controls: FiniteType,
    tables: SdpTables,
    monad: Arc<dyn Monad>,
    measure: Measure,
}

impl fmt::Debug for Sdp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sdp")
            .field("horizon", &self.horizon)
            .field("states", &self.states)
            .field("controls", &self.controls)
            .field("monad", &self.monad.name())
            .field("measure", &self.measure)
            .finish()
    }
}

fn config(msg: String) -> Error {
    Error::Config(msg)
}

impl Sdp {
    pub fn new(
        horizon: usize,
        states: FiniteType,
        controls: FiniteType,
        monad: Arc<dyn Monad>,
        measure: Measure,
        mut tables: SdpTables,
    ) -> Result<Self> {
        let (nx, ny) = (states.size as usize, controls.size as usize);
        let dims_ok = tables.admissible.len() == horizon
            && tables.next.len() == horizon
            && tables.reward.len() == horizon
            && tables.admissible.iter().all(|row| row.len() == nx)
            && tables.next.iter().all(|row| row.len() == nx && row.iter().all(|ys| ys.len() == ny))
            && tables.reward.iter().all(|row| {
                row.len() == nx && row.iter().all(|ys| ys.len() == ny && ys.iter().all(|xs| xs.len() == nx))
            });
        if !dims_ok {
            return Err(config(format!(
                "sdp tables must be indexed [t < {horizon}][x < {nx}][y < {ny}][x' < {nx}]"
            )));
        }
        let carrier = monad.carrier_of(CarrierDesc::Base(states.clone()));
        for t in 0..horizon {
            for x in 0..nx {
                let adm = &tables.admissible[t][x];
                if adm.is_empty() {
                    return Err(config(format!("no admissible control at t={t}, x={x}")));
                }
                if let Some(y) = adm.iter().find(|&&y| y >= controls.size) {
                    return Err(config(format!("admissible control {y} out of range at t={t}, x={x}")));
                }
                for &y in adm {
                    let entry = &mut tables.next[t][x][y as usize];
                    let canon = monad.canonicalize(entry.clone()).map_err(|e| {
                        config(format!("next[{t}][{x}][{y}] = {entry} is not a valid {}: {e}", monad.name()))
                    })?;
                    if !carrier.admits(&canon) {
                        return Err(config(format!("next[{t}][{x}][{y}] = {canon} does not inhabit {carrier}")));
                    }
                    if matches!(measure, Measure::Max | Measure::Min) && canon == Value::Seq(Vec::new()) {
                        return Err(config(format!(
                            "next[{t}][{x}][{y}] is empty but measure {measure} needs non-empty supports"
                        )));
                    }
                    *entry = canon;
                }
            }
        }
        Ok(Sdp {
            horizon,
            states,
            controls,
            tables,
            monad,
            measure,
        })
    }

    /// Builds the tables from functions of `(t, x, y)` and `(t, x, y, x')`.
    #[allow(clippy::too_many_arguments)]
    pub fn tabulate(
        horizon: usize,
        states: FiniteType,
        controls: FiniteType,
        monad: Arc<dyn Monad>,
        measure: Measure,
        admissible: impl Fn(usize, u32) -> Vec<u32>,
        next: impl Fn(usize, u32, u32) -> Result<Value>,
        reward: impl Fn(usize, u32, u32, u32) -> Rational,
    ) -> Result<Self> {
        let (nx, ny) = (states.size, controls.size);
        let mut tables = SdpTables {
            admissible: Vec::new(),
            next: Vec::new(),
            reward: Vec::new(),
        };
        for t in 0..horizon {
            tables.admissible.push((0..nx).map(|x| admissible(t, x)).collect());
            tables.next.push(
                (0..nx)
                    .map(|x| (0..ny).map(|y| next(t, x, y)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            );
            tables.reward.push(
                (0..nx)
                    .map(|x| (0..ny).map(|y| (0..nx).map(|x2| reward(t, x, y, x2)).collect()).collect())
                    .collect(),
            );
        }
        Sdp::new(horizon, states, controls, monad, measure, tables)
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn states(&self) -> &FiniteType {
        &self.states
    }

    pub fn controls(&self) -> &FiniteType {
        &self.controls
    }

    pub fn monad(&self) -> &dyn Monad {
        self.monad.as_ref()
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn admissible(&self, t: usize, x: u32) -> &[u32] {
        &self.tables.admissible[t][x as usize]
    }

    /// The control `p` picks at `(t, x)`, validated against admissibility.
    fn control(&self, p: &Policy, t: usize, x: u32) -> Result<u32> {
        let y = *p
            .get(x as usize)
            .ok_or_else(|| config(format!("policy at t={t} has no entry for state {x}")))?;
        if !self.admissible(t, x).contains(&y) {
            return Err(config(format!("policy picks inadmissible control {y} at t={t}, x={x}")));
        }
        Ok(y)
    }

    fn reward(&self, t: usize, x: u32, y: u32, x2: u32) -> &Rational {
        &self.tables.reward[t][x as usize][y as usize][x2 as usize]
    }

    fn check_range(&self, ps: &[Policy], t: usize, x: u32) -> Result<()> {
        if t + ps.len() > self.horizon {
            return Err(Error::Usage(format!(
                "{} policies from t={t} exceed horizon {}",
                ps.len(),
                self.horizon
            )));
        }
        if x >= self.states.size {
            return Err(Error::Usage(format!("state {x} out of range")));
        }
        Ok(())
    }

    /// Every admissible policy sequence covering the whole horizon, in
    /// mixed-radix order over `(t, x)`.
    pub fn policy_sequences(&self) -> Vec<Vec<Policy>> {
        let nx = self.states.size as usize;
        let slots: Vec<&[u32]> = (0..self.horizon)
            .flat_map(|t| (0..nx).map(move |x| (t, x)))
            .map(|(t, x)| self.tables.admissible[t][x].as_slice())
            .collect();
        let mut out = vec![Vec::new()];
        for slot in &slots {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    slot.iter().map(move |&y| {
                        let mut p = prefix.clone();
                        p.push(y);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|flat| flat.chunks(nx.max(1)).map(<[u32]>::to_vec).take(self.horizon).collect())
            .collect()
    }
}

/// Instrumentation for one evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EvalStats {
    pub measure_calls: u64,
}

/// Backward-induction value of following `ps` from state `x` at time `t`.
pub fn val(p: &Sdp, ps: &[Policy], t: usize, x: u32) -> Result<Rational> {
    val_counted(p, ps, t, x).map(|(v, _)| v)
}

pub fn val_counted(p: &Sdp, ps: &[Policy], t: usize, x: u32) -> Result<(Rational, EvalStats)> {
    p.check_range(ps, t, x)?;
    let calls = Cell::new(0);
    let v = val_rec(p, ps, t, x, &calls)?;
    Ok((v, EvalStats { measure_calls: calls.get() }))
}

fn val_rec(p: &Sdp, ps: &[Policy], t: usize, x: u32, calls: &Cell<u64>) -> Result<Rational> {
    let Some((head, tail)) = ps.split_first() else {
        return Ok(Rational::zero());
    };
    let y = p.control(head, t, x)?;
    let next = &p.tables.next[t][x as usize][y as usize];
    let m = p.monad();
    let mr = m.map(
        &|x2: &Value| {
            let x2 = x2.as_atom()?;
            Ok(Value::Num(p.reward(t, x, y, x2) + val_rec(p, tail, t + 1, x2, calls)?))
        },
        next,
    )?;
    calls.set(calls.get() + 1);
    p.measure.apply(&mr)
}

/// The M-structure of state trajectories `<x_t, ..., x_{t+n}>` when each
/// step's control is chosen by the corresponding policy.
pub fn trajectories(p: &Sdp, ps: &[Policy], t: usize, x: u32) -> Result<Value> {
    p.check_range(ps, t, x)?;
    traj_rec(p, ps, t, x)
}

fn traj_rec(p: &Sdp, ps: &[Policy], t: usize, x: u32) -> Result<Value> {
    let m = p.monad();
    let tails = match ps.split_first() {
        None => m.pure(Value::Vector(Vec::new()))?,
        Some((head, tail)) => {
            let y = p.control(head, t, x)?;
            let next = &p.tables.next[t][x as usize][y as usize];
            m.bind(next, &|x2: &Value| traj_rec(p, tail, t + 1, x2.as_atom()?))?
        }
    };
    m.map(
        &|v: &Value| match v {
            Value::Vector(xs) => Ok(Value::Vector(std::iter::once(Value::Atom(x)).chain(xs.iter().cloned()).collect())),
            other => Err(Error::shape("vector", other)),
        },
        &tails,
    )
}

fn reward_sum(p: &Sdp, ps: &[Policy], t: usize, path: &Value) -> Result<Value> {
    let Value::Vector(xs) = path else {
        return Err(Error::shape("vector", path));
    };
    let mut total = Rational::zero();
    for (i, pair) in xs.windows(2).enumerate() {
        let (x, x2) = (pair[0].as_atom()?, pair[1].as_atom()?);
        let y = p.control(&ps[i], t + i, x)?;
        total += p.reward(t + i, x, y, x2);
    }
    Ok(Value::Num(total))
}

/// The specification: sum rewards along every trajectory, measure once.
pub fn val_spec(p: &Sdp, ps: &[Policy], t: usize, x: u32) -> Result<Rational> {
    val_spec_counted(p, ps, t, x).map(|(v, _)| v)
}

pub fn val_spec_counted(p: &Sdp, ps: &[Policy], t: usize, x: u32) -> Result<(Rational, EvalStats)> {
    let paths = trajectories(p, ps, t, x)?;
    let sums = p.monad().map(&|path: &Value| reward_sum(p, ps, t, path), &paths)?;
    Ok((p.measure.apply(&sums)?, EvalStats { measure_calls: 1 }))
}

/// Value grid for shift checks: the M-structures range over `{0, 1, 2}`.
pub fn default_value_grid() -> Vec<Rational> {
    (0..3).map(|n: i64| Rational::from_integer(n.into())).collect()
}

/// Constants added during shift checks.
pub fn default_shift_grid() -> Vec<Rational> {
    let int = |n: i64| Rational::from_integer(n.into());
    vec![int(0), int(1), int(2), int(-1), Rational::new(1.into(), 2.into())]
}

/// Shift-compatibility: `meas (map (c +) m) = c + meas m` for every
/// M-structure `m` over `values` on which the measure is defined, and every
/// constant `c` in `grid`.
pub fn check_measure_shift(
    meas: Measure,
    monad: &dyn Monad,
    values: &[Rational],
    grid: &[Rational],
    q: &Quantifier,
    caps: &Caps,
) -> Result<LawReport> {
    let start = Instant::now();
    let v = FiniteType::new("V", values.len() as u32);
    let to_num = |a: &Value| Ok(Value::Num(values[a.as_atom()? as usize].clone()));
    let structures = enumerate_carrier_with(&monad.carrier_of(CarrierDesc::Base(v.clone())), caps)?
        .iter()
        .map(|ma| monad.map(&to_num, ma))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|m| meas.defined_on(m))
        .collect::<Vec<_>>();
    let (structures, mode) = q.select(structures);
    let binders = vec![
        Binder::new("m", structures, mode),
        Binder::all("c", grid.iter().cloned().map(Value::Num).collect()),
    ];
    let outcome = search(&binders, |args| {
        let c = args[1].as_num()?;
        let shifted = monad.map(&|r: &Value| Ok(Value::Num(c + r.as_num()?)), args[0])?;
        let lhs = meas.apply(&shifted)?;
        let rhs = c + meas.apply(args[0])?;
        Ok(Mismatch::compare(Value::Num(lhs), Value::Num(rhs)))
    })?;
    let domains = BTreeMap::from([("V".to_string(), v.size)]);
    Ok(LawReport::from_outcome(
        "measureShift",
        meas.name(),
        monad.name(),
        domains,
        &binders,
        outcome,
        start.elapsed(),
    ))
}

fn shift_gate(p: &Sdp, q: &Quantifier) -> Result<Option<LawReport>> {
    let shift = check_measure_shift(
        p.measure,
        p.monad(),
        &default_value_grid(),
        &default_shift_grid(),
        q,
        &Caps::default(),
    )?;
    if shift.pass {
        return Ok(None);
    }
    let note = format!(
        "measure {} is not shift-compatible over {}; val = val' is not claimed",
        p.measure,
        p.monad().name()
    );
    let mut refused = shift;
    refused.law = "valEquiv".into();
    refused.name = "valEquiv".into();
    refused.note = Some(note);
    Ok(Some(refused))
}

fn sdp_domains(p: &Sdp) -> BTreeMap<String, u32> {
    BTreeMap::from([
        (p.states.name.clone(), p.states.size),
        (p.controls.name.clone(), p.controls.size),
    ])
}

/// `val ps 0 ≐ val_spec ps 0` over all states. Refused (failing, with the
/// shift counterexample) when the measure is not shift-compatible.
pub fn check_val_equiv(p: &Sdp, ps: &[Policy], q: &Quantifier) -> Result<LawReport> {
    let start = Instant::now();
    if let Some(refused) = shift_gate(p, q)? {
        return Ok(refused);
    }
    let binders = vec![Binder::domain("x", &p.states)];
    let outcome = search(&binders, |v| {
        let x = v[0].as_atom()?;
        Ok(Mismatch::compare(Value::Num(val(p, ps, 0, x)?), Value::Num(val_spec(p, ps, 0, x)?)))
    })?;
    let report = LawReport::from_outcome("valEquiv", "valEquiv", p.monad().name(), sdp_domains(p), &binders, outcome, start.elapsed());
    Ok(report.with_param("horizon", p.horizon as u64).with_param("policies", ps.len() as u64))
}

fn policies_value(ps: &[Policy]) -> Value {
    Value::Vector(
        ps.iter()
            .map(|p| Value::Fn(p.iter().map(|&y| Value::Atom(y)).collect()))
            .collect(),
    )
}

fn policies_from_value(v: &Value) -> Result<Vec<Policy>> {
    match v {
        Value::Vector(ps) => ps
            .iter()
            .map(|p| match p {
                Value::Fn(ys) => ys.iter().map(Value::as_atom).collect(),
                other => Err(Error::shape("policy table", other)),
            })
            .collect(),
        other => Err(Error::shape("policy sequence", other)),
    }
}

/// [`check_val_equiv`] quantified over every admissible full-horizon policy
/// sequence (sampled when there are more than the budget).
pub fn check_val_equiv_all(p: &Sdp, q: &Quantifier) -> Result<LawReport> {
    let start = Instant::now();
    if let Some(refused) = shift_gate(p, q)? {
        return Ok(refused);
    }
    let all: Vec<Value> = p.policy_sequences().iter().map(|ps| policies_value(ps)).collect();
    let (seqs, mode) = q.select(all);
    let binders = vec![Binder::new("ps", seqs, mode), Binder::domain("x", &p.states)];
    let outcome = search(&binders, |v| {
        let ps = policies_from_value(v[0])?;
        let x = v[1].as_atom()?;
        Ok(Mismatch::compare(Value::Num(val(p, &ps, 0, x)?), Value::Num(val_spec(p, &ps, 0, x)?)))
    })?;
    let report = LawReport::from_outcome("valEquiv", "valEquiv", p.monad().name(), sdp_domains(p), &binders, outcome, start.elapsed());
    Ok(report.with_param("horizon", p.horizon as u64))
}

/// Built-in decision problems; `horizon` overrides the default of each.
pub const SDP_NAMES: [&str; 6] = ["coin", "walk-max", "controlled-walk", "controlled-branch", "stopping", "ledger"];

/// A built-in decision problem by name.
///
/// * `coin`: fair coin, reward 1 on heads (simpleprob, expected).
/// * `walk-max`: `x ↦ [x, x+1]` on three states, reward = next state (nondet, max).
/// * `controlled-walk`: two controls with different drift (simpleprob, expected).
/// * `controlled-branch`: stay or branch two ways (nondet, max).
/// * `stopping`: the walk may fall off the end (maybe, default-zero).
/// * `ledger`: deterministic increment, reward = next state (identity, point).
pub fn sdp_by_name(name: &str, horizon: Option<usize>, cfg: &InstanceConfig) -> Result<Sdp> {
    let x3 = FiniteType::new("X", 3);
    let y1 = FiniteType::new("Y", 1);
    let y2 = FiniteType::new("Y", 2);
    let frac = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let int = |n: u32| Rational::from_integer(n.into());
    let next3 = |x: u32, k: u32| Value::Atom((x + k) % 3);
    let all = |n: u32| move |_: usize, _: u32| (0..n).collect::<Vec<u32>>();
    let m = |n: &str| monad_by_name(n, cfg);
    match name {
        "coin" => Sdp::tabulate(
            horizon.unwrap_or(1),
            FiniteType::new("X", 2),
            y1,
            m("simpleprob")?,
            Measure::Expected,
            all(1),
            |_, _, _| Value::dist(vec![(Value::Atom(0), frac(1, 2)), (Value::Atom(1), frac(1, 2))]),
            |_, _, _, x2| int(x2),
        ),
        "walk-max" => Sdp::tabulate(
            horizon.unwrap_or(2),
            x3,
            y1,
            m("nondet")?,
            Measure::Max,
            all(1),
            |_, x, _| Ok(Value::Seq(vec![next3(x, 0), next3(x, 1)])),
            |_, _, _, x2| int(x2),
        ),
        "controlled-walk" => Sdp::tabulate(
            horizon.unwrap_or(3),
            x3,
            y2,
            m("simpleprob")?,
            Measure::Expected,
            |_, x| if x == 2 { vec![0] } else { vec![0, 1] },
            |_, x, y| match y {
                0 => Value::dist(vec![(next3(x, 0), frac(2, 3)), (next3(x, 1), frac(1, 3))]),
                _ => Value::dist(vec![(next3(x, 1), frac(1, 2)), (next3(x, 2), frac(1, 2))]),
            },
            |t, _, y, x2| int(x2) - frac(y as i64, 2) + frac(t as i64, 4),
        ),
        "controlled-branch" => Sdp::tabulate(
            horizon.unwrap_or(3),
            x3,
            y2,
            m("nondet")?,
            Measure::Max,
            all(2),
            |_, x, y| {
                Ok(match y {
                    0 => Value::Seq(vec![next3(x, 0)]),
                    _ => Value::Seq(vec![next3(x, 1), next3(x, 2)]),
                })
            },
            |_, x, y, x2| int(x2) - int(x) * frac(y as i64, 3),
        ),
        "stopping" => Sdp::tabulate(
            horizon.unwrap_or(2),
            x3,
            y1,
            m("maybe")?,
            Measure::DefaultZero,
            all(1),
            |_, x, _| Ok(if x < 2 { Value::some(Value::Atom(x + 1)) } else { Value::none() }),
            |_, _, _, x2| int(x2),
        ),
        "ledger" => Sdp::tabulate(
            horizon.unwrap_or(3),
            x3,
            y1,
            m("identity")?,
            Measure::Point,
            all(1),
            |_, x, _| Ok(next3(x, 1)),
            |_, _, _, x2| int(x2),
        ),
        other => Err(config(format!("unknown sdp {other:?}; known: {}", SDP_NAMES.join(", ")))),
    }
}

/// Number of full-horizon policy sequences, for reports.
pub fn policy_space(p: &Sdp) -> Mode {
    let count = (0..p.horizon)
        .flat_map(|t| (0..p.states.size).map(move |x| (t, x)))
        .map(|(t, x)| p.admissible(t, x).len() as u64)
        .product();
    Mode::Exhaustive { count }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_sequences_cover_admissible_choices() {
        let p = sdp_by_name("controlled-walk", Some(2), &InstanceConfig::default()).unwrap();
        let seqs = p.policy_sequences();
        assert_eq!(seqs.len() as u64, policy_space(&p).count());
        assert_eq!(seqs.len(), 16);
        assert!(seqs.iter().all(|ps| ps.len() == 2 && ps.iter().all(|pol| pol[2] == 0)));
    }
}
