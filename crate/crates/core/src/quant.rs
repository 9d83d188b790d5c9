//! The quantification engine.
//!
//! A universally quantified statement is a list of [`Binder`]s (each ranging
//! over a finite list of value tuples) plus a predicate. [`search`] walks the
//! product space in lexicographic order, outer binder most significant, and
//! reports the least failing tuple. The outermost binder is split across the
//! rayon pool; `find_map_first` keeps the reported witness independent of
//! scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::carrier::{enumerate_carrier_with, enumerate_domain, Caps, CarrierDesc, FiniteType};
use crate::error::{Error, Result};
use crate::table::enumerate_functions_with;
use crate::value::Value;

/// Budget and seed for one quantified check. A quantifier whose population
/// fits the budget is exhaustive; otherwise `budget` candidates are drawn
/// uniformly with replacement from a generator seeded with `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Quantifier {
    pub budget: u64,
    pub seed: u64,
}

impl Quantifier {
    pub fn new(budget: u64, seed: u64) -> Self {
        Quantifier { budget, seed }
    }

    pub fn exhaustive() -> Self {
        Quantifier::new(u64::MAX, 0)
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub(crate) fn draw(&self, rng: &mut ChaCha8Rng, n: usize) -> usize {
        rng.random_range(0..n as u64) as usize
    }

    /// Keeps all candidates if they fit the budget, else samples.
    pub fn select(&self, candidates: Vec<Value>) -> (Vec<Value>, Mode) {
        if candidates.len() as u64 <= self.budget {
            let count = candidates.len() as u64;
            return (candidates, Mode::Exhaustive { count });
        }
        let mut rng = self.rng();
        let picked = (0..self.budget)
            .map(|_| candidates[self.draw(&mut rng, candidates.len())].clone())
            .collect();
        (
            picked,
            Mode::Sampled {
                count: self.budget,
                population: candidates.len().to_string(),
            },
        )
    }
}

impl Default for Quantifier {
    fn default() -> Self {
        Quantifier::new(100_000, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive { count: u64 },
    Sampled { count: u64, population: String },
}

impl Mode {
    pub fn count(&self) -> u64 {
        match self {
            Mode::Exhaustive { count } | Mode::Sampled { count, .. } => *count,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Mode::Exhaustive { .. })
    }
}

/// One quantified variable (or a tuple of jointly chosen variables).
#[derive(Clone, Debug)]
pub struct Binder {
    pub names: Vec<String>,
    pub tuples: Vec<Vec<Value>>,
    pub mode: Mode,
}

impl Binder {
    pub fn new(name: &str, values: Vec<Value>, mode: Mode) -> Self {
        Binder {
            names: vec![name.to_string()],
            tuples: values.into_iter().map(|v| vec![v]).collect(),
            mode,
        }
    }

    pub fn all(name: &str, values: Vec<Value>) -> Self {
        let count = values.len() as u64;
        Binder::new(name, values, Mode::Exhaustive { count })
    }

    pub fn tuples(names: &[&str], tuples: Vec<Vec<Value>>, mode: Mode) -> Self {
        debug_assert!(tuples.iter().all(|t| t.len() == names.len()));
        Binder {
            names: names.iter().map(|n| n.to_string()).collect(),
            tuples,
            mode,
        }
    }

    /// Every element of a finite domain; domains are always exhaustive.
    pub fn domain(name: &str, d: &FiniteType) -> Self {
        Binder::all(name, enumerate_domain(d))
    }

    pub fn carrier(name: &str, c: &CarrierDesc, q: &Quantifier, caps: &Caps) -> Result<Self> {
        let (values, mode) = q.select(enumerate_carrier_with(c, caps)?);
        Ok(Binder::new(name, values, mode))
    }

    pub fn functions(name: &str, dom: &FiniteType, cod: &CarrierDesc, q: &Quantifier, caps: &Caps) -> Result<Self> {
        let (tables, mode) = enumerate_functions_with(dom, cod, q, caps)?;
        Ok(Binder::new(name, tables.iter().map(|t| t.to_value()).collect(), mode))
    }

    /// Pairs `(f, g)` of functions in the same equality class, grouped
    /// once instead of filtering the full square.
    pub fn equal_pairs(names: [&str; 2], fns: &Binder) -> Self {
        use std::collections::BTreeMap;
        let mut classes: BTreeMap<&Value, Vec<&Value>> = BTreeMap::new();
        for t in &fns.tuples {
            // Tables are extensional: equal tables are exactly the
            // extensionally equal functions.
            classes.entry(&t[0]).or_default().push(&t[0]);
        }
        let mut tuples = Vec::new();
        for t in &fns.tuples {
            for g in &classes[&t[0]] {
                tuples.push(vec![t[0].clone(), (*g).clone()]);
            }
        }
        let mode = match &fns.mode {
            Mode::Exhaustive { .. } => Mode::Exhaustive {
                count: tuples.len() as u64,
            },
            Mode::Sampled { population, .. } => Mode::Sampled {
                count: tuples.len() as u64,
                population: population.clone(),
            },
        };
        Binder::tuples(&names, tuples, mode)
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

/// Where two sides of a law disagree; `extra` carries inner bound
/// variables the predicate chose itself (e.g. the point of a `≐` check).
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub extra: Vec<(String, Value)>,
    pub lhs: Value,
    pub rhs: Value,
}

impl Mismatch {
    pub fn new(lhs: Value, rhs: Value) -> Self {
        Mismatch {
            extra: Vec::new(),
            lhs,
            rhs,
        }
    }

    /// `None` when the two sides are equal.
    pub fn compare(lhs: Value, rhs: Value) -> Option<Self> {
        (lhs != rhs).then(|| Mismatch::new(lhs, rhs))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Found {
    pub bindings: Vec<(String, Value)>,
    pub mismatch: Mismatch,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    /// Tuples evaluated in sequential order up to and including the
    /// witness, or the whole space when no witness exists.
    pub checked: u64,
    pub failure: Option<Found>,
}

type Hit = (usize, u64, Result<Mismatch>);

/// Searches the product of `binders` for the least tuple on which `pred`
/// reports a mismatch (or an error, which is propagated).
pub fn search<P>(binders: &[Binder], pred: P) -> Result<Outcome>
where
    P: Fn(&[&Value]) -> Result<Option<Mismatch>> + Sync,
{
    let counts: Vec<usize> = binders.iter().map(Binder::len).collect();
    let total = counts
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(c as u64))
        .ok_or_else(|| Error::Usage("quantified space exceeds 2^64 tuples".into()))?;
    if total == 0 {
        return Ok(Outcome {
            checked: 0,
            failure: None,
        });
    }
    let Some((&outer, rest)) = counts.split_first() else {
        return Ok(match pred(&[])? {
            Some(m) => Outcome {
                checked: 1,
                failure: Some(Found {
                    bindings: Vec::new(),
                    mismatch: m,
                }),
            },
            None => Outcome {
                checked: 1,
                failure: None,
            },
        });
    };
    let stride = total / outer as u64;

    let scan = |i: usize| -> Option<Hit> {
        let mut digits = vec![0usize; rest.len()];
        let mut k: u64 = 0;
        loop {
            let mut args: Vec<&Value> = binders[0].tuples[i].iter().collect();
            for (b, &d) in binders[1..].iter().zip(&digits) {
                args.extend(b.tuples[d].iter());
            }
            match pred(&args) {
                Ok(None) => {}
                Ok(Some(m)) => return Some((i, k, Ok(m))),
                Err(e) => return Some((i, k, Err(e))),
            }
            k += 1;
            // odometer over the inner binders, last binder fastest
            let mut pos = rest.len();
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < rest[pos] {
                    break;
                }
                digits[pos] = 0;
            }
        }
    };

    let hit = (0..outer).into_par_iter().find_map_first(scan);
    match hit {
        None => Ok(Outcome {
            checked: total,
            failure: None,
        }),
        Some((_, _, Err(e))) => Err(e),
        Some((i, k, Ok(mismatch))) => {
            let mut bindings = Vec::new();
            let mut rem = k;
            let mut digits = vec![0usize; rest.len()];
            for pos in (0..rest.len()).rev() {
                digits[pos] = (rem % rest[pos] as u64) as usize;
                rem /= rest[pos] as u64;
            }
            let chosen = std::iter::once(i).chain(digits);
            for (b, idx) in binders.iter().zip(chosen) {
                for (name, v) in b.names.iter().zip(&b.tuples[idx]) {
                    bindings.push((name.clone(), v.clone()));
                }
            }
            Ok(Outcome {
                checked: i as u64 * stride + k + 1,
                failure: Some(Found { bindings, mismatch }),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(n: u32) -> Vec<Value> {
        (0..n).map(Value::Atom).collect()
    }

    #[test]
    fn passes_report_the_whole_space() {
        let bs = [Binder::all("x", atoms(3)), Binder::all("y", atoms(4))];
        let out = search(&bs, |_| Ok(None)).unwrap();
        assert_eq!(out.checked, 12);
        assert!(out.failure.is_none());
    }

    #[test]
    fn empty_binder_is_vacuous() {
        let bs = [Binder::all("x", atoms(3)), Binder::all("y", vec![])];
        let out = search(&bs, |_| Err(Error::Usage("never called".into()))).unwrap();
        assert_eq!(out.checked, 0);
        assert!(out.failure.is_none());
    }

    #[test]
    fn least_witness_in_lexicographic_order() {
        let bs = [Binder::all("x", atoms(5)), Binder::all("y", atoms(5))];
        // fails when x + y >= 6; least such tuple is (2, 4)
        let out = search(&bs, |a| {
            let s = a[0].as_atom()? + a[1].as_atom()?;
            Ok((s >= 6).then(|| Mismatch::new(Value::Atom(s), Value::Atom(0))))
        })
        .unwrap();
        let found = out.failure.unwrap();
        assert_eq!(found.bindings, vec![("x".into(), Value::Atom(2)), ("y".into(), Value::Atom(4))]);
        assert_eq!(out.checked, 2 * 5 + 4 + 1);
    }

    #[test]
    fn witness_is_stable_across_pool_sizes() {
        let bs = [Binder::all("x", atoms(40)), Binder::all("y", atoms(40))];
        let pred = |a: &[&Value]| {
            let (x, y) = (a[0].as_atom()?, a[1].as_atom()?);
            Ok((x * y % 37 == 5).then(|| Mismatch::new(a[0].clone(), a[1].clone())))
        };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| search(&bs, pred).unwrap())
        };
        assert_eq!(run(1), run(8));
    }

    #[test]
    fn sampling_respects_budget() {
        let q = Quantifier::new(5, 1);
        let (vals, mode) = q.select(atoms(100));
        assert_eq!(vals.len(), 5);
        assert!(!mode.is_exhaustive());
        assert_eq!(q.select(atoms(100)).0, vals);
        let (vals, mode) = q.select(atoms(5));
        assert_eq!(vals, atoms(5));
        assert!(mode.is_exhaustive());
    }

    #[test]
    fn equal_pairs_groups_identical_tables() {
        let fns = Binder::all("f", vec![Value::Fn(vec![Value::Atom(0)]), Value::Fn(vec![Value::Atom(1)])]);
        let pairs = Binder::equal_pairs(["f", "g"], &fns);
        assert_eq!(pairs.len(), 2);
        assert!(pairs.tuples.iter().all(|t| t[0] == t[1]));
    }
}
