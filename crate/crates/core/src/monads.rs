//! Uncertainty monads as value-level operation records.
//!
//! Each instance works on [`Value`]s of a fixed shape: the identity monad
//! on plain values, Maybe on `Opt`, nondeterminism on `Seq` (order and
//! multiplicity matter, a true List monad) and finite probability on
//! canonical `Dist`s with exact weights. Reader is only a functor.
//!
//! `map`, `join`, `bind` and `kleisli_at` are each implemented natively
//! rather than derived from one another, so the relationships between them
//! are checkable laws and not definitional equalities.

use std::sync::Arc;

use num::{One, Zero};

use crate::carrier::{Caps, CarrierDesc, FiniteType};
use crate::error::{Error, Result};
use crate::table::FnTable;
use crate::value::{merge_sorted, Rational, Value};

/// An arrow `A -> M B` (or `A -> B`) evaluated on values.
pub type Arrow<'a> = dyn Fn(&Value) -> Result<Value> + 'a;

pub trait Functor: Send + Sync {
    fn name(&self) -> &str;

    /// The carrier of `F A` given the carrier of `A`.
    fn carrier_of(&self, a: CarrierDesc) -> CarrierDesc;

    fn map(&self, f: &Arrow<'_>, fa: &Value) -> Result<Value>;
}

pub trait Monad: Functor {
    fn pure(&self, a: Value) -> Result<Value>;

    fn join(&self, mma: &Value) -> Result<Value>;

    fn bind(&self, ma: &Value, f: &Arrow<'_>) -> Result<Value>;

    /// `(f >=> g) a`.
    fn kleisli_at(&self, f: &Arrow<'_>, g: &Arrow<'_>, a: &Value) -> Result<Value>;

    fn canonicalize(&self, ma: Value) -> Result<Value>;
}

impl dyn Monad {
    /// Table-level Kleisli composition `f >=> g`.
    pub fn kleisli(&self, f: &FnTable, g: &FnTable) -> Result<FnTable> {
        let fa = |x: &Value| f.apply(x);
        let gb = |x: &Value| g.apply(x);
        FnTable::tabulate(f.domain(), g.codomain(), |a| self.kleisli_at(&fa, &gb, a))
    }

    /// `pure` as a table `X -> M X`.
    pub fn pure_table(&self, x: &FiniteType) -> Result<FnTable> {
        let cod = self.carrier_of(CarrierDesc::Base(x.clone()));
        FnTable::tabulate(x, &cod, |a| self.pure(a.clone()))
    }
}

fn apply_all(f: &Arrow<'_>, xs: &[Value]) -> Result<Vec<Value>> {
    xs.iter().map(f).collect()
}

#[derive(Clone, Debug, Default)]
pub struct Identity;

impl Functor for Identity {
    fn name(&self) -> &str {
        "identity"
    }

    fn carrier_of(&self, a: CarrierDesc) -> CarrierDesc {
        a
    }

    fn map(&self, f: &Arrow<'_>, fa: &Value) -> Result<Value> {
        f(fa)
    }
}

impl Monad for Identity {
    fn pure(&self, a: Value) -> Result<Value> {
        Ok(a)
    }

    fn join(&self, mma: &Value) -> Result<Value> {
        Ok(mma.clone())
    }

    fn bind(&self, ma: &Value, f: &Arrow<'_>) -> Result<Value> {
        f(ma)
    }

    fn kleisli_at(&self, f: &Arrow<'_>, g: &Arrow<'_>, a: &Value) -> Result<Value> {
        g(&f(a)?)
    }

    fn canonicalize(&self, ma: Value) -> Result<Value> {
        Ok(ma)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Maybe;

fn opt(v: &Value) -> Result<Option<&Value>> {
    match v {
        Value::Opt(inner) => Ok(inner.as_deref()),
        other => Err(Error::shape("optional", other)),
    }
}

impl Functor for Maybe {
    fn name(&self) -> &str {
        "maybe"
    }

    fn carrier_of(&self, a: CarrierDesc) -> CarrierDesc {
        a.maybe()
    }

    fn map(&self, f: &Arrow<'_>, fa: &Value) -> Result<Value> {
        Ok(match opt(fa)? {
            None => Value::none(),
            Some(v) => Value::some(f(v)?),
        })
    }
}

impl Monad for Maybe {
    fn pure(&self, a: Value) -> Result<Value> {
        Ok(Value::some(a))
    }

    fn join(&self, mma: &Value) -> Result<Value> {
        match opt(mma)? {
            None => Ok(Value::none()),
            Some(inner) => opt(inner).map(|_| inner.clone()),
        }
    }

    fn bind(&self, ma: &Value, f: &Arrow<'_>) -> Result<Value> {
        match opt(ma)? {
            None => Ok(Value::none()),
            Some(v) => f(v),
        }
    }

    fn kleisli_at(&self, f: &Arrow<'_>, g: &Arrow<'_>, a: &Value) -> Result<Value> {
        match opt(&f(a)?)? {
            None => Ok(Value::none()),
            Some(b) => g(b),
        }
    }

    fn canonicalize(&self, ma: Value) -> Result<Value> {
        opt(&ma)?;
        Ok(ma)
    }
}

/// The List monad: sequences with order and multiplicity.
#[derive(Clone, Debug)]
pub struct Nondet {
    name: String,
    max_len: usize,
    caps: Caps,
    reverse_outer_join: bool,
}

fn seq(v: &Value) -> Result<&[Value]> {
    match v {
        Value::Seq(xs) => Ok(xs),
        other => Err(Error::shape("sequence", other)),
    }
}

impl Nondet {
    pub fn new(max_len: usize) -> Result<Self> {
        Nondet::with_caps(max_len, Caps::default())
    }

    pub fn with_caps(max_len: usize, caps: Caps) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::Config("nondet needs max_len >= 1".into()));
        }
        Ok(Nondet {
            name: "nondet".into(),
            max_len,
            caps,
            reverse_outer_join: false,
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn concat<'v>(&self, parts: impl IntoIterator<Item = &'v [Value]>) -> Result<Value> {
        let mut out = Vec::new();
        for part in parts {
            if out.len() + part.len() > self.caps.max_seq_len {
                return Err(Error::CarrierOverflow {
                    bound: "max_seq_len",
                    actual: out.len() + part.len(),
                    cap: self.caps.max_seq_len,
                });
            }
            out.extend_from_slice(part);
        }
        Ok(Value::Seq(out))
    }

    fn concat_images(&self, xs: &[Value], f: &Arrow<'_>) -> Result<Value> {
        let images = apply_all(f, xs)?;
        let parts = images.iter().map(seq).collect::<Result<Vec<_>>>()?;
        self.concat(parts)
    }
}

impl Functor for Nondet {
    fn name(&self) -> &str {
        &self.name
    }

    fn carrier_of(&self, a: CarrierDesc) -> CarrierDesc {
        a.seq(self.max_len)
    }

    fn map(&self, f: &Arrow<'_>, fa: &Value) -> Result<Value> {
        Ok(Value::Seq(apply_all(f, seq(fa)?)?))
    }
}

impl Monad for Nondet {
    fn pure(&self, a: Value) -> Result<Value> {
        Ok(Value::Seq(vec![a]))
    }

    fn join(&self, mma: &Value) -> Result<Value> {
        let outer = seq(mma)?;
        let parts = outer.iter().map(seq).collect::<Result<Vec<_>>>()?;
        if self.reverse_outer_join {
            self.concat(parts.into_iter().rev())
        } else {
            self.concat(parts)
        }
    }

    fn bind(&self, ma: &Value, f: &Arrow<'_>) -> Result<Value> {
        self.concat_images(seq(ma)?, f)
    }

    fn kleisli_at(&self, f: &Arrow<'_>, g: &Arrow<'_>, a: &Value) -> Result<Value> {
        self.concat_images(seq(&f(a)?)?, g)
    }

    fn canonicalize(&self, ma: Value) -> Result<Value> {
        seq(&ma)?;
        Ok(ma)
    }
}

/// Finite probability distributions with exact rational weights.
#[derive(Clone, Debug)]
pub struct SimpleProb {
    name: String,
    max_support: usize,
    caps: Caps,
    merge_duplicates: bool,
}

fn dist(v: &Value) -> Result<&[(Value, Rational)]> {
    match v {
        Value::Dist(es) => Ok(es),
        other => Err(Error::shape("distribution", other)),
    }
}

impl SimpleProb {
    pub fn new(max_support: usize) -> Result<Self> {
        SimpleProb::with_caps(max_support, Caps::default())
    }

    pub fn with_caps(max_support: usize, caps: Caps) -> Result<Self> {
        if max_support == 0 {
            return Err(Error::Config("simpleprob needs max_support >= 1".into()));
        }
        Ok(SimpleProb {
            name: "simpleprob".into(),
            max_support,
            caps,
            merge_duplicates: true,
        })
    }

    pub fn max_support(&self) -> usize {
        self.max_support
    }

    fn normalize(&self, mut entries: Vec<(Value, Rational)>) -> Result<Value> {
        if entries.is_empty() {
            return Err(Error::Usage("distribution with empty support".into()));
        }
        entries = if self.merge_duplicates {
            merge_sorted(entries)
        } else {
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            entries
        };
        if entries.len() > self.caps.max_support {
            return Err(Error::CarrierOverflow {
                bound: "max_support",
                actual: entries.len(),
                cap: self.caps.max_support,
            });
        }
        Ok(Value::Dist(entries))
    }

    fn mixture(&self, outer: &[(Value, Rational)], f: &Arrow<'_>) -> Result<Value> {
        let mut entries = Vec::new();
        for (v, w) in outer {
            let image = f(v)?;
            for (x, p) in dist(&image)? {
                entries.push((x.clone(), w * p));
            }
        }
        self.normalize(entries)
    }
}

impl Functor for SimpleProb {
    fn name(&self) -> &str {
        &self.name
    }

    fn carrier_of(&self, a: CarrierDesc) -> CarrierDesc {
        a.dist(self.max_support)
    }

    fn map(&self, f: &Arrow<'_>, fa: &Value) -> Result<Value> {
        let entries = dist(fa)?
            .iter()
            .map(|(v, w)| Ok((f(v)?, w.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.normalize(entries)
    }
}

impl Monad for SimpleProb {
    fn pure(&self, a: Value) -> Result<Value> {
        Ok(Value::point(a))
    }

    fn join(&self, mma: &Value) -> Result<Value> {
        self.mixture(dist(mma)?, &|inner| Ok(inner.clone()))
    }

    fn bind(&self, ma: &Value, f: &Arrow<'_>) -> Result<Value> {
        self.mixture(dist(ma)?, f)
    }

    fn kleisli_at(&self, f: &Arrow<'_>, g: &Arrow<'_>, a: &Value) -> Result<Value> {
        let fa = f(a)?;
        self.mixture(dist(&fa)?, g)
    }

    /// Also the gate for externally built distributions: weights must be
    /// positive and sum to exactly one.
    fn canonicalize(&self, ma: Value) -> Result<Value> {
        let entries = dist(&ma)?.to_vec();
        let total = entries.iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
        if !total.is_one() || entries.iter().any(|(_, w)| *w <= Rational::zero()) {
            return Err(Error::Usage(format!("non-normalized distribution (total {total})")));
        }
        self.normalize(entries)
    }
}

/// `Reader E A = E -> A`, a functor only: `map f r = f ∘ r`.
#[derive(Clone, Debug)]
pub struct Reader {
    env: FiniteType,
}

impl Reader {
    pub fn new(env: FiniteType) -> Self {
        Reader { env }
    }

    pub fn env(&self) -> &FiniteType {
        &self.env
    }
}

impl Functor for Reader {
    fn name(&self) -> &str {
        "reader"
    }

    fn carrier_of(&self, a: CarrierDesc) -> CarrierDesc {
        CarrierDesc::fn_of(self.env.clone(), a)
    }

    fn map(&self, f: &Arrow<'_>, fa: &Value) -> Result<Value> {
        match fa {
            Value::Fn(entries) if entries.len() == self.env.size as usize => {
                Ok(Value::Fn(apply_all(f, entries)?))
            }
            other => Err(Error::shape(format!("reader over {}", self.env.name), other)),
        }
    }
}

pub fn identity_monad() -> Identity {
    Identity
}

pub fn maybe_monad() -> Maybe {
    Maybe
}

pub fn nondet_monad(max_len: usize) -> Result<Nondet> {
    Nondet::new(max_len)
}

pub fn simpleprob_monad(max_support: usize) -> Result<SimpleProb> {
    SimpleProb::new(max_support)
}

pub fn reader_functor(env: FiniteType) -> Reader {
    Reader::new(env)
}

/// `mutant-a`: nondet whose join concatenates the outer sequence reversed.
pub fn mutant_a(max_len: usize, caps: Caps) -> Result<Nondet> {
    let mut m = Nondet::with_caps(max_len, caps)?;
    m.name = "mutant-a".into();
    m.reverse_outer_join = true;
    Ok(m)
}

/// `mutant-b`: simpleprob whose canonical form sorts but never merges
/// equal support points.
pub fn mutant_b(max_support: usize, caps: Caps) -> Result<SimpleProb> {
    let mut m = SimpleProb::with_caps(max_support, caps)?;
    m.name = "mutant-b".into();
    m.merge_duplicates = false;
    Ok(m)
}

/// The deliberately broken instances used to test that checks can refute.
pub fn broken_instances() -> Vec<Arc<dyn Monad>> {
    vec![
        Arc::new(mutant_a(2, Caps::default()).expect("valid bound")),
        Arc::new(mutant_b(2, Caps::default()).expect("valid bound")),
    ]
}

pub const INSTANCE_NAMES: [&str; 7] = [
    "identity",
    "maybe",
    "nondet",
    "simpleprob",
    "mutant-a",
    "mutant-b",
    "reader",
];

/// Bounds used when building instances by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceConfig {
    pub max_len: usize,
    pub max_support: usize,
    pub env: u32,
    pub caps: Caps,
}

impl Default for InstanceConfig {
    fn default() -> Self {
        InstanceConfig {
            max_len: 2,
            max_support: 2,
            env: 2,
            caps: Caps::default(),
        }
    }
}

/// A registered instance: a full monad, or the functor-only Reader.
#[derive(Clone)]
pub enum Instance {
    Monad(Arc<dyn Monad>),
    Functor(Arc<dyn Functor>),
}

impl Instance {
    pub fn name(&self) -> &str {
        self.functor().name()
    }

    pub fn functor(&self) -> &dyn Functor {
        match self {
            Instance::Monad(m) => m.as_ref(),
            Instance::Functor(f) => f.as_ref(),
        }
    }

    pub fn monad(&self) -> Option<&Arc<dyn Monad>> {
        match self {
            Instance::Monad(m) => Some(m),
            Instance::Functor(_) => None,
        }
    }

    pub fn is_lawful(&self) -> bool {
        !self.name().starts_with("mutant")
    }
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Instance({})", self.name())
    }
}

pub fn instance_by_name(name: &str, cfg: &InstanceConfig) -> Result<Instance> {
    Ok(match name {
        "identity" => Instance::Monad(Arc::new(Identity)),
        "maybe" => Instance::Monad(Arc::new(Maybe)),
        "nondet" => Instance::Monad(Arc::new(Nondet::with_caps(cfg.max_len, cfg.caps)?)),
        "simpleprob" => Instance::Monad(Arc::new(SimpleProb::with_caps(cfg.max_support, cfg.caps)?)),
        "mutant-a" => Instance::Monad(Arc::new(mutant_a(cfg.max_len, cfg.caps)?)),
        "mutant-b" => Instance::Monad(Arc::new(mutant_b(cfg.max_support, cfg.caps)?)),
        "reader" => Instance::Functor(Arc::new(Reader::new(FiniteType::new("E", cfg.env)))),
        other => {
            return Err(Error::Config(format!(
                "unknown instance `{other}` (known: {})",
                INSTANCE_NAMES.join(", ")
            )))
        }
    })
}

pub fn monad_by_name(name: &str, cfg: &InstanceConfig) -> Result<Arc<dyn Monad>> {
    instance_by_name(name, cfg)?
        .monad()
        .cloned()
        .ok_or_else(|| Error::Config(format!("`{name}` is a functor, not a monad")))
}
