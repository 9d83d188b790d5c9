//! Deterministic and monadic dynamical systems over finite state spaces.
//!
//! A monadic system is a step table `X -> M X`. Its flow is the n-fold
//! Kleisli iterate, its trajectories are the M-structure of state paths, and
//! its representation is the deterministic system `id >=> step` on `M X`.
//!
//! Kleisli composition here is the default-method definition
//! `f >=> g = join ∘ map g ∘ f`, so flows exercise an instance's `join` and
//! `map` rather than its native Kleisli operator (which the law suite checks
//! separately against this definition).

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use crate::carrier::{enumerate_carrier_with, Caps, CarrierDesc, FiniteType};
use crate::error::{Error, Result};
use crate::eqcheck::compose_tables;
use crate::monads::{monad_by_name, Arrow, InstanceConfig, Monad};
use crate::quant::{search, Binder, Mismatch, Outcome, Quantifier};
use crate::report::LawReport;
use crate::table::FnTable;
use crate::value::{Rational, Value};

/// `X -> X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetSys {
    step: FnTable,
}

impl DetSys {
    pub fn new(step: FnTable) -> Result<Self> {
        if step.codomain() != &CarrierDesc::Base(step.domain().clone()) {
            return Err(Error::Usage(format!(
                "deterministic step must be an endofunction, got {} -> {}",
                step.domain().name,
                step.codomain()
            )));
        }
        Ok(DetSys { step })
    }

    pub fn from_fn(x: &FiniteType, f: impl Fn(u32) -> u32) -> Result<Self> {
        let cod = CarrierDesc::Base(x.clone());
        DetSys::new(FnTable::tabulate(x, &cod, |v| Ok(Value::Atom(f(v.as_atom()?))))?)
    }

    pub fn states(&self) -> &FiniteType {
        self.step.domain()
    }

    pub fn step(&self) -> &FnTable {
        &self.step
    }
}

/// `flowL f (S n) = flowL f n ∘ f`.
pub fn flow_det_left(s: &DetSys, n: usize) -> Result<FnTable> {
    (0..n).try_fold(FnTable::identity(s.states()), |acc, _| compose_tables(&acc, &s.step))
}

/// `flowR f (S n) = f ∘ flowR f n`.
pub fn flow_det_right(s: &DetSys, n: usize) -> Result<FnTable> {
    (0..n).try_fold(FnTable::identity(s.states()), |acc, _| compose_tables(&s.step, &acc))
}

/// `X -> M X` for a fixed monad.
#[derive(Clone)]
pub struct MonSys {
    monad: Arc<dyn Monad>,
    step: FnTable,
    caps: Caps,
}

impl std::fmt::Debug for MonSys {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonSys")
            .field("monad", &self.monad.name())
            .field("step", &self.step)
            .finish()
    }
}

impl MonSys {
    /// Canonicalizes every entry and retypes the table to `X -> M X`.
    pub fn new(monad: Arc<dyn Monad>, step: FnTable) -> Result<Self> {
        let x = step.domain().clone();
        let cod = monad.carrier_of(CarrierDesc::Base(x.clone()));
        let entries = step
            .entries()
            .iter()
            .map(|v| monad.canonicalize(v.clone()))
            .collect::<Result<Vec<_>>>()?;
        let step = FnTable::new(x, cod, entries)?;
        Ok(MonSys {
            monad,
            step,
            caps: Caps::default(),
        })
    }

    pub fn from_fn(monad: Arc<dyn Monad>, x: &FiniteType, f: impl Fn(u32) -> Result<Value>) -> Result<Self> {
        let cod = monad.carrier_of(CarrierDesc::Base(x.clone()));
        let table = FnTable::tabulate(x, &cod, |v| f(v.as_atom()?))?;
        MonSys::new(monad, table)
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn monad(&self) -> &dyn Monad {
        self.monad.as_ref()
    }

    pub fn states(&self) -> &FiniteType {
        self.step.domain()
    }

    pub fn step(&self) -> &FnTable {
        &self.step
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// The same monad with a different step, e.g. a flow viewed as a system.
    fn with_step(&self, step: FnTable) -> MonSys {
        MonSys {
            monad: self.monad.clone(),
            step,
            caps: self.caps,
        }
    }

    /// Refuses horizons whose worst-case sequence length exceeds the cap;
    /// truncating instead would make failing laws look like passes.
    fn check_horizon(&self, n: usize) -> Result<()> {
        let branch = self
            .step
            .entries()
            .iter()
            .map(|v| match v {
                Value::Seq(xs) => xs.len(),
                _ => 1,
            })
            .max()
            .unwrap_or(1);
        let worst = (branch as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if worst > self.caps.max_seq_len as u128 {
            return Err(Error::CarrierOverflow {
                bound: "max_seq_len",
                actual: usize::try_from(worst).unwrap_or(usize::MAX),
                cap: self.caps.max_seq_len,
            });
        }
        Ok(())
    }
}

/// `embed f = pure ∘ f`.
pub fn embed(s: &DetSys, monad: Arc<dyn Monad>) -> Result<MonSys> {
    let m = monad.clone();
    MonSys::from_fn(monad, s.states(), |x| m.pure(s.step.apply(&Value::Atom(x))?))
}

/// `(f >=> g) a = join (map g (f a))`.
pub fn kleisli_at(m: &dyn Monad, f: &Arrow<'_>, g: &Arrow<'_>, a: &Value) -> Result<Value> {
    m.join(&m.map(g, &f(a)?)?)
}

pub fn kleisli(m: &dyn Monad, f: &FnTable, g: &FnTable) -> Result<FnTable> {
    let fa = |x: &Value| f.apply(x);
    let gb = |x: &Value| g.apply(x);
    FnTable::tabulate(f.domain(), g.codomain(), |a| kleisli_at(m, &fa, &gb, a))
}

fn pure_table(s: &MonSys) -> Result<FnTable> {
    let m = s.monad();
    FnTable::tabulate(s.states(), s.step.codomain(), |a| m.pure(a.clone()))
}

/// The canonical (left) flow: `flow f (S n) = flow f n >=> f`.
pub fn flow(s: &MonSys, n: usize) -> Result<FnTable> {
    s.check_horizon(n)?;
    (0..n).try_fold(pure_table(s)?, |acc, _| kleisli(s.monad(), &acc, &s.step))
}

/// `flowMonR f (S n) = f >=> flowMonR f n`.
pub fn flow_right(s: &MonSys, n: usize) -> Result<FnTable> {
    s.check_horizon(n)?;
    (0..n).try_fold(pure_table(s)?, |acc, _| kleisli(s.monad(), &s.step, &acc))
}

/// `repr f = id >=> f`, a deterministic system on `M X`.
pub struct Repr<'s> {
    sys: &'s MonSys,
}

pub fn repr(s: &MonSys) -> Repr<'_> {
    Repr { sys: s }
}

impl Repr<'_> {
    pub fn carrier(&self) -> CarrierDesc {
        self.sys.step.codomain().clone()
    }

    pub fn apply(&self, mx: &Value) -> Result<Value> {
        let step = |x: &Value| self.sys.step.apply(x);
        kleisli_at(self.sys.monad(), &|v: &Value| Ok(v.clone()), &step, mx)
    }

    /// The representation materialized over the bounded carrier of `M X`.
    /// Images may fall outside the bounds (a distribution's weights leave
    /// the enumeration grid), so this is a graph rather than an endo-table.
    pub fn table(&self) -> Result<Vec<(Value, Value)>> {
        enumerate_carrier_with(&self.carrier(), &self.sys.caps)?
            .into_iter()
            .map(|mx| {
                let image = self.apply(&mx)?;
                Ok((mx, image))
            })
            .collect()
    }

    /// `flowDet (repr f) n mx`, by iterated application.
    pub fn iterate(&self, n: usize, mx: &Value) -> Result<Value> {
        (0..n).try_fold(mx.clone(), |acc, _| self.apply(&acc))
    }
}

fn prepend(x: &Value, v: &Value) -> Result<Value> {
    match v {
        Value::Vector(xs) => {
            let mut out = Vec::with_capacity(xs.len() + 1);
            out.push(x.clone());
            out.extend_from_slice(xs);
            Ok(Value::Vector(out))
        }
        other => Err(Error::shape("vector", other)),
    }
}

pub fn last(v: &Value) -> Result<Value> {
    match v {
        Value::Vector(xs) => xs.last().cloned().ok_or_else(|| Error::Usage("last of an empty vector".into())),
        other => Err(Error::shape("vector", other)),
    }
}

/// `trj f n x`: the M-structure of the length-`n+1` paths starting at `x`.
pub fn trj(s: &MonSys, n: usize, x: &Value) -> Result<Value> {
    s.check_horizon(n)?;
    trj_rec(s, n, x)
}

fn trj_rec(s: &MonSys, n: usize, x: &Value) -> Result<Value> {
    let m = s.monad();
    let tails = if n == 0 {
        m.pure(Value::Vector(Vec::new()))?
    } else {
        let step = |a: &Value| s.step.apply(a);
        kleisli_at(m, &step, &|y: &Value| trj_rec(s, n - 1, y), x)?
    };
    m.map(&|v: &Value| prepend(x, v), &tails)
}

fn states_binder(s: &MonSys) -> Binder {
    Binder::domain("x", s.states())
}

fn domains(x: &FiniteType) -> BTreeMap<String, u32> {
    BTreeMap::from([(x.name.clone(), x.size)])
}

fn pointwise(lhs: &FnTable, rhs: &FnTable) -> Result<(Vec<Binder>, Outcome)> {
    let binders = vec![Binder::domain("x", lhs.domain())];
    let outcome = search(&binders, |v| Ok(Mismatch::compare(lhs.apply(v[0])?, rhs.apply(v[0])?)))?;
    Ok((binders, outcome))
}

fn single(law: &str, x: &FiniteType, instance: &str, part: (Vec<Binder>, Outcome), start: Instant) -> LawReport {
    LawReport::from_outcome(law, law, instance, domains(x), &part.0, part.1, start.elapsed())
}

/// `flowLemma`: `flowL f n` and `flowR f n` are the same table.
pub fn check_flow_lemma(s: &DetSys, n: usize) -> Result<LawReport> {
    let start = Instant::now();
    let part = pointwise(&flow_det_left(s, n)?, &flow_det_right(s, n)?)?;
    Ok(single("flowLemma", s.states(), "deterministic", part, start).with_param("n", n as u64))
}

/// `flowMonLemma`: `flow f n ≐ flow_right f n`.
pub fn check_flow_mon_lemma(s: &MonSys, n: usize) -> Result<LawReport> {
    let start = Instant::now();
    let part = pointwise(&flow(s, n)?, &flow_right(s, n)?)?;
    Ok(single("flowMonLemma", s.states(), s.monad().name(), part, start).with_param("n", n as u64))
}

/// `flowMonRLem`: `(flowMonR f n >=> f) ≐ (f >=> flowMonR f n)`.
pub fn check_flow_mon_r_lem(s: &MonSys, n: usize) -> Result<LawReport> {
    let start = Instant::now();
    s.check_horizon(n + 1)?;
    let fr = flow_right(s, n)?;
    let part = pointwise(&kleisli(s.monad(), &fr, &s.step)?, &kleisli(s.monad(), &s.step, &fr)?)?;
    Ok(single("flowMonRLem", s.states(), s.monad().name(), part, start).with_param("n", n as u64))
}

/// `flowLemma2` (`flow f Z ≐ pure`) and `flowLemma1`
/// (`flow f (m + n) ≐ flow f m >=> flow f n`).
pub fn check_flow_monoid(s: &MonSys, m: usize, n: usize) -> Result<LawReport> {
    let start = Instant::now();
    let (b2, o2) = pointwise(&flow(s, 0)?, &pure_table(s)?)?;
    let (b1, o1) = pointwise(&flow(s, m + n)?, &kleisli(s.monad(), &flow(s, m)?, &flow(s, n)?)?)?;
    let report = LawReport::from_parts(
        "flowMonoid",
        s.monad().name(),
        domains(s.states()),
        vec![("flowLemma2", b2, o2), ("flowLemma1", b1, o1)],
        start.elapsed(),
    );
    Ok(report.with_param("m", m as u64).with_param("n", n as u64))
}

/// Naturality of `embed`: `flow (embed f) n ≐ pure ∘ flowDet f n`.
pub fn check_embed_flow(s: &DetSys, monad: Arc<dyn Monad>, n: usize) -> Result<LawReport> {
    let start = Instant::now();
    let sys = embed(s, monad)?;
    let m = sys.monad();
    let det = flow_det_left(s, n)?;
    let rhs = FnTable::tabulate(s.states(), sys.step.codomain(), |x| m.pure(det.apply(x)?))?;
    let part = pointwise(&flow(&sys, n)?, &rhs)?;
    Ok(single("embedFlow", s.states(), m.name(), part, start).with_param("n", n as u64))
}

/// `reprLemma`: `repr (flow f n) ≐ flowDet (repr f) n` on every value of
/// the bounded carrier of `M X` (sampled when it exceeds the budget).
pub fn check_repr_lemma(s: &MonSys, n: usize, q: &Quantifier) -> Result<LawReport> {
    let start = Instant::now();
    let flown = s.with_step(flow(s, n)?);
    let (lhs, rhs) = (repr(&flown), repr(s));
    let binders = vec![Binder::carrier("mx", &rhs.carrier(), q, &s.caps)?];
    let outcome = search(&binders, |v| Ok(Mismatch::compare(lhs.apply(v[0])?, rhs.iterate(n, v[0])?)))?;
    Ok(single("reprLemma", s.states(), s.monad().name(), (binders, outcome), start).with_param("n", n as u64))
}

/// `flowTrjLemma` (`flow f n ≐ map last ∘ trj f n`) together with its
/// auxiliaries `mapLastLemma` over `M (Vect (n+1) X)` and `lastLemma` over
/// `Vect (n+1) X`.
pub fn check_flow_trj(s: &MonSys, n: usize, q: &Quantifier) -> Result<LawReport> {
    let start = Instant::now();
    let m = s.monad();
    let fl = flow(s, n)?;
    let xs = states_binder(s);
    let main = vec![xs.clone()];
    let o_main = search(&main, |v| {
        let paths = trj(s, n, v[0])?;
        Ok(Mismatch::compare(fl.apply(v[0])?, m.map(&last, &paths)?))
    })?;

    let vect = CarrierDesc::Base(s.states().clone()).vec(n + 1);
    let map_last = vec![xs.clone(), Binder::carrier("mvx", &m.carrier_of(vect.clone()), q, &s.caps)?];
    let o_map_last = search(&map_last, |v| {
        let x = v[0];
        let lhs = m.map(&last, &m.map(&|p: &Value| prepend(x, p), v[1])?)?;
        Ok(Mismatch::compare(lhs, m.map(&last, v[1])?))
    })?;

    let last_lemma = vec![xs, Binder::carrier("v", &vect, q, &s.caps)?];
    let o_last = search(&last_lemma, |v| Ok(Mismatch::compare(last(&prepend(v[0], v[1])?)?, last(v[1])?)))?;

    let report = LawReport::from_parts(
        "flowTrjLemma",
        m.name(),
        domains(s.states()),
        vec![
            ("flowTrjLemma", main, o_main),
            ("mapLastLemma", map_last, o_map_last),
            ("lastLemma", last_lemma, o_last),
        ],
        start.elapsed(),
    );
    Ok(report.with_param("n", n as u64))
}

/// Sum of the weights of a distribution value.
pub fn total_weight(v: &Value) -> Result<Rational> {
    match v {
        Value::Dist(entries) => Ok(entries.iter().map(|(_, w)| w).sum()),
        other => Err(Error::shape("distribution", other)),
    }
}

/// Built-in systems on a three-element state space, addressable by name.
pub const SYSTEM_NAMES: [&str; 5] = ["inc", "branching-walk", "coin-walk", "lazy-walk", "partial-walk"];

/// Increment modulo three, as a deterministic system.
pub fn inc3() -> DetSys {
    DetSys::from_fn(&FiniteType::new("X", 3), |x| (x + 1) % 3).expect("endofunction")
}

/// A built-in system. `inc` is the deterministic increment embedded into
/// `instance`; the walks fix their own monad unless `instance` names a
/// compatible mutant (e.g. `mutant-a` for the branching walk).
pub fn system_by_name(name: &str, instance: Option<&str>, cfg: &InstanceConfig) -> Result<MonSys> {
    let x = FiniteType::new("X", 3);
    let next = |i: u32| Value::Atom((i + 1) % 3);
    let pick = |default: &str| monad_by_name(instance.unwrap_or(default), cfg);
    let sys = match name {
        "inc" => embed(&inc3(), pick("identity")?)?,
        "branching-walk" => MonSys::from_fn(pick("nondet")?, &x, |i| Ok(Value::Seq(vec![Value::Atom(i), next(i)])))?,
        "coin-walk" => {
            let half = Rational::new(1.into(), 2.into());
            MonSys::from_fn(pick("simpleprob")?, &x, |i| {
                Value::dist(vec![(Value::Atom(i), half.clone()), (next(i), half.clone())])
            })?
        }
        "lazy-walk" => MonSys::from_fn(pick("simpleprob")?, &x, |i| {
            Value::dist(vec![
                (Value::Atom(i), Rational::new(1.into(), 3.into())),
                (next(i), Rational::new(2.into(), 3.into())),
            ])
        })?,
        "partial-walk" => MonSys::from_fn(pick("maybe")?, &x, |i| {
            Ok(if i + 1 < 3 { Value::some(next(i)) } else { Value::none() })
        })?,
        other => {
            return Err(Error::Config(format!(
                "unknown system {other:?}; known: {}",
                SYSTEM_NAMES.join(", ")
            )))
        }
    };
    Ok(sys.with_caps(cfg.caps))
}

