//! Finite domains, carrier descriptors and their canonical enumeration.

use std::fmt;
use std::sync::OnceLock;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::value::{Rational, Value};

/// A named enumerable domain whose elements are `Atom(0)..Atom(size-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteType {
    pub name: String,
    pub size: u32,
}

impl FiniteType {
    pub fn new(name: impl Into<String>, size: u32) -> Self {
        FiniteType {
            name: name.into(),
            size,
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Atom(i) if *i < self.size)
    }
}

pub fn enumerate_domain(d: &FiniteType) -> Vec<Value> {
    (0..d.size).map(Value::Atom).collect()
}

/// Global bounds that keep enumeration and monadic results finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest carrier `enumerate_carrier` will materialize.
    pub max_carrier: usize,
    /// Longest sequence a nondeterministic operation may produce.
    pub max_seq_len: usize,
    /// Largest support a probabilistic operation may produce.
    pub max_support: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_carrier: 1 << 20,
            max_seq_len: 1 << 12,
            max_support: 1 << 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CarrierDesc {
    Base(FiniteType),
    MaybeOf(Box<CarrierDesc>),
    SeqOf(Box<CarrierDesc>, usize),
    DistOf(Box<CarrierDesc>, usize),
    VecOf(Box<CarrierDesc>, usize),
    FnOf(FiniteType, Box<CarrierDesc>),
}

impl fmt::Display for CarrierDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarrierDesc::Base(d) => write!(f, "{}", d.name),
            CarrierDesc::MaybeOf(c) => write!(f, "Maybe({c})"),
            CarrierDesc::SeqOf(c, n) => write!(f, "Seq({c}, {n})"),
            CarrierDesc::DistOf(c, n) => write!(f, "Dist({c}, {n})"),
            CarrierDesc::VecOf(c, n) => write!(f, "Vec({c}, {n})"),
            CarrierDesc::FnOf(e, c) => write!(f, "Fn({}, {c})", e.name),
        }
    }
}

/// Weight grid for bounded distributions: every weight is one of these.
const GRID: [(i64, i64); 6] = [(1, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4)];

/// Ordered weight tuples of length `k` drawn from the grid that sum to one.
pub fn weight_tuples(k: usize) -> &'static [Vec<Rational>] {
    static TABLE: OnceLock<Vec<Vec<Vec<Rational>>>> = OnceLock::new();
    // The smallest grid weight is 1/4, so no tuple is longer than four.
    let table = TABLE.get_or_init(|| {
        let grid: Vec<Rational> = GRID
            .iter()
            .map(|&(n, d)| Rational::new(n.into(), d.into()))
            .collect();
        let mut table = vec![Vec::new()];
        for len in 1..=4 {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fill_tuples(&grid, len, Rational::zero(), &mut cur, &mut out);
            table.push(out);
        }
        table
    });
    table.get(k).map_or(&[], |v| v.as_slice())
}

fn fill_tuples(
    grid: &[Rational],
    remaining: usize,
    acc: Rational,
    cur: &mut Vec<Rational>,
    out: &mut Vec<Vec<Rational>>,
) {
    if remaining == 0 {
        if acc.is_one() {
            out.push(cur.clone());
        }
        return;
    }
    for w in grid {
        let next = &acc + w;
        if next > Rational::one() {
            continue;
        }
        cur.push(w.clone());
        fill_tuples(grid, remaining - 1, next, cur, out);
        cur.pop();
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

impl CarrierDesc {
    pub fn base(name: &str, size: u32) -> Self {
        CarrierDesc::Base(FiniteType::new(name, size))
    }

    pub fn maybe(self) -> Self {
        CarrierDesc::MaybeOf(Box::new(self))
    }

    pub fn seq(self, max_len: usize) -> Self {
        CarrierDesc::SeqOf(Box::new(self), max_len)
    }

    pub fn dist(self, max_support: usize) -> Self {
        CarrierDesc::DistOf(Box::new(self), max_support)
    }

    pub fn vec(self, len: usize) -> Self {
        CarrierDesc::VecOf(Box::new(self), len)
    }

    pub fn fn_of(env: FiniteType, cod: CarrierDesc) -> Self {
        CarrierDesc::FnOf(env, Box::new(cod))
    }

    /// Closed-form carrier size; `None` when it does not fit in a `u128`.
    ///
    /// * `Base n` = n
    /// * `MaybeOf c` = 1 + |c|
    /// * `SeqOf(c, L)` = sum over k in 0..=L of |c|^k
    /// * `DistOf(c, S)` = sum over k in 1..=min(S, 4) of C(|c|, k) * W(k), with W = 1, 5, 4, 1
    /// * `VecOf(c, L)` = |c|^L
    /// * `FnOf(E, c)` = |c|^|E|
    pub fn size(&self) -> Option<u128> {
        match self {
            CarrierDesc::Base(d) => Some(d.size as u128),
            CarrierDesc::MaybeOf(c) => c.size()?.checked_add(1),
            CarrierDesc::SeqOf(c, max_len) => {
                let n = c.size()?;
                let mut total: u128 = 0;
                let mut power: u128 = 1;
                for k in 0..=*max_len {
                    if k > 0 {
                        power = power.checked_mul(n)?;
                    }
                    total = total.checked_add(power)?;
                }
                Some(total)
            }
            CarrierDesc::DistOf(c, max_support) => {
                let n = c.size()?;
                let mut total: u128 = 0;
                for k in 1..=(*max_support).min(4) {
                    let ways = binomial(n, k as u128)?.checked_mul(weight_tuples(k).len() as u128)?;
                    total = total.checked_add(ways)?;
                }
                Some(total)
            }
            CarrierDesc::VecOf(c, len) => c.size()?.checked_pow(u32::try_from(*len).ok()?),
            CarrierDesc::FnOf(e, c) => c.size()?.checked_pow(e.size),
        }
    }

    /// Nesting depth of function spaces in the outermost position.
    pub fn fn_depth(&self) -> usize {
        match self {
            CarrierDesc::FnOf(_, c) => 1 + c.fn_depth(),
            _ => 0,
        }
    }

    /// Whether `v` has this carrier's shape, ignoring length and support
    /// bounds. Results of monadic operations may legitimately exceed the
    /// enumeration bounds while keeping the shape.
    pub fn admits(&self, v: &Value) -> bool {
        match (self, v) {
            (CarrierDesc::Base(d), v) => d.contains(v),
            (CarrierDesc::MaybeOf(_), Value::Opt(None)) => true,
            (CarrierDesc::MaybeOf(c), Value::Opt(Some(x))) => c.admits(x),
            (CarrierDesc::SeqOf(c, _), Value::Seq(xs)) => xs.iter().all(|x| c.admits(x)),
            (CarrierDesc::DistOf(c, _), Value::Dist(es)) => {
                !es.is_empty() && es.iter().all(|(x, _)| c.admits(x))
            }
            (CarrierDesc::VecOf(c, len), Value::Vector(xs)) => {
                xs.len() == *len && xs.iter().all(|x| c.admits(x))
            }
            (CarrierDesc::FnOf(e, c), Value::Fn(xs)) => {
                xs.len() == e.size as usize && xs.iter().all(|x| c.admits(x))
            }
            _ => false,
        }
    }

    /// Whether `v` is one of the values `enumerate_carrier` yields.
    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (CarrierDesc::MaybeOf(c), Value::Opt(Some(x))) => c.contains(x),
            (CarrierDesc::SeqOf(c, n), Value::Seq(xs)) => {
                xs.len() <= *n && xs.iter().all(|x| c.contains(x))
            }
            (CarrierDesc::DistOf(c, n), Value::Dist(es)) => {
                es.len() <= *n
                    && es.iter().all(|(x, _)| c.contains(x))
                    && weight_tuples(es.len())
                        .iter()
                        .any(|ws| ws.iter().zip(es).all(|(w, (_, e))| w == e))
                    && es.windows(2).all(|p| p[0].0 < p[1].0)
            }
            (CarrierDesc::VecOf(c, _), Value::Vector(xs)) | (CarrierDesc::FnOf(_, c), Value::Fn(xs)) => {
                self.admits(v) && xs.iter().all(|x| c.contains(x))
            }
            _ => self.admits(v),
        }
    }
}

/// All canonical values of a carrier, in canonical order.
pub fn enumerate_carrier(c: &CarrierDesc) -> Result<Vec<Value>> {
    enumerate_carrier_with(c, &Caps::default())
}

pub fn enumerate_carrier_with(c: &CarrierDesc, caps: &Caps) -> Result<Vec<Value>> {
    let too_large = |size: String| Error::CarrierTooLarge {
        desc: c.to_string(),
        size,
        cap: caps.max_carrier,
    };
    let size = c.size().ok_or_else(|| too_large("more than 2^128".into()))?;
    if size > caps.max_carrier as u128 {
        return Err(too_large(size.to_string()));
    }
    let mut out = match c {
        CarrierDesc::Base(d) => return Ok(enumerate_domain(d)),
        CarrierDesc::MaybeOf(inner) => {
            let mut out = vec![Value::none()];
            out.extend(enumerate_carrier_with(inner, caps)?.into_iter().map(Value::some));
            out
        }
        CarrierDesc::SeqOf(inner, max_len) => {
            let elems = enumerate_carrier_with(inner, caps)?;
            let mut out = vec![Value::Seq(Vec::new())];
            let mut layer: Vec<Vec<Value>> = vec![Vec::new()];
            for _ in 0..*max_len {
                layer = layer
                    .iter()
                    .flat_map(|prefix| {
                        elems.iter().map(move |e| {
                            let mut next = prefix.clone();
                            next.push(e.clone());
                            next
                        })
                    })
                    .collect();
                out.extend(layer.iter().cloned().map(Value::Seq));
            }
            out
        }
        CarrierDesc::DistOf(inner, max_support) => {
            let elems = enumerate_carrier_with(inner, caps)?;
            let mut out = Vec::new();
            for k in 1..=(*max_support).min(4).min(elems.len()) {
                for support in combinations(elems.len(), k) {
                    for ws in weight_tuples(k) {
                        let entries = support
                            .iter()
                            .zip(ws)
                            .map(|(&i, w)| (elems[i].clone(), w.clone()))
                            .collect();
                        out.push(Value::Dist(entries));
                    }
                }
            }
            out
        }
        CarrierDesc::VecOf(inner, len) => {
            let elems = enumerate_carrier_with(inner, caps)?;
            mixed_radix(elems.len(), *len)
                .map(|digits| Value::Vector(digits.iter().map(|&i| elems[i].clone()).collect()))
                .collect()
        }
        CarrierDesc::FnOf(env, inner) => {
            let elems = enumerate_carrier_with(inner, caps)?;
            mixed_radix(elems.len(), env.size as usize)
                .map(|digits| Value::Fn(digits.iter().map(|&i| elems[i].clone()).collect()))
                .collect()
        }
    };
    out.sort();
    debug_assert_eq!(out.len() as u128, size);
    Ok(out)
}

/// Increasing index tuples of length `k` from `0..n`, lexicographically.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Digit vectors of length `len` over radix `radix`, first digit most
/// significant. A zero-length vector is produced once even for radix 0.
pub(crate) fn mixed_radix(radix: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if len == 0 || radix > 0 {
        Some(vec![0; len])
    } else {
        None
    };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut pos = len;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < radix {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> CarrierDesc {
        CarrierDesc::base("A", 2)
    }

    #[test]
    fn domain_enumeration() {
        let d = FiniteType::new("A", 3);
        assert_eq!(enumerate_domain(&d), vec![Value::Atom(0), Value::Atom(1), Value::Atom(2)]);
        assert!(enumerate_domain(&FiniteType::new("E", 0)).is_empty());
        assert_eq!(enumerate_domain(&FiniteType::new("U", 1)), vec![Value::Atom(0)]);
    }

    #[test]
    fn maybe_carrier() {
        let vals = enumerate_carrier(&two().maybe()).unwrap();
        let text: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
        assert_eq!(text, ["none", "some #0", "some #1"]);
    }

    #[test]
    fn seq_carrier() {
        let vals = enumerate_carrier(&two().seq(1)).unwrap();
        let text: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
        assert_eq!(text, ["[]", "[#0]", "[#1]"]);
        assert_eq!(enumerate_carrier(&two().seq(2)).unwrap().len(), 7);
    }

    #[test]
    fn weight_grid_tuples() {
        let counts: Vec<usize> = (0..=5).map(|k| weight_tuples(k).len()).collect();
        assert_eq!(counts, [0, 1, 5, 4, 1, 0]);
    }

    #[test]
    fn dist_carrier_has_seven_values_over_two_atoms() {
        let vals = enumerate_carrier(&two().dist(2)).unwrap();
        assert_eq!(vals.len(), 7);
        assert_eq!(vals[0].to_string(), "{#0: 1/1}");
        assert_eq!(vals[1].to_string(), "{#1: 1/1}");
        assert!(vals.iter().all(|v| two().dist(2).contains(v)));
    }

    #[test]
    fn vec_and_fn_carriers() {
        assert_eq!(enumerate_carrier(&two().vec(3)).unwrap().len(), 8);
        let env = FiniteType::new("E", 2);
        let readers = enumerate_carrier(&CarrierDesc::fn_of(env, two())).unwrap();
        let text: Vec<String> = readers.iter().map(|v| v.to_string()).collect();
        assert_eq!(text, ["fn[#0,#0]", "fn[#0,#1]", "fn[#1,#0]", "fn[#1,#1]"]);
    }

    #[test]
    fn empty_base_carriers() {
        let empty = CarrierDesc::base("E", 0);
        assert_eq!(enumerate_carrier(&empty.clone().maybe()).unwrap(), vec![Value::none()]);
        assert_eq!(enumerate_carrier(&empty.clone().seq(3)).unwrap(), vec![Value::Seq(vec![])]);
        assert!(enumerate_carrier(&empty.clone().dist(2)).unwrap().is_empty());
        assert_eq!(enumerate_carrier(&empty.vec(0)).unwrap(), vec![Value::Vector(vec![])]);
    }

    #[test]
    fn carrier_cap_is_enforced() {
        let caps = Caps {
            max_carrier: 100,
            ..Caps::default()
        };
        let err = enumerate_carrier_with(&two().seq(10), &caps).unwrap_err();
        assert!(matches!(err, Error::CarrierTooLarge { .. }), "{err}");
    }

    #[test]
    fn nested_sizes_match_closed_form() {
        let descs = [
            two().seq(2).seq(2),
            two().dist(2).dist(2),
            two().maybe().maybe().maybe(),
            two().dist(3),
            CarrierDesc::base("A", 3).dist(4),
        ];
        for d in descs {
            let vals = enumerate_carrier(&d).unwrap();
            assert_eq!(vals.len() as u128, d.size().unwrap(), "{d}");
        }
        assert_eq!(two().seq(2).seq(2).size(), Some(57));
        assert_eq!(two().dist(2).dist(2).size(), Some(112));
    }

    #[test]
    fn admits_ignores_bounds() {
        let c = two().seq(1);
        let long = Value::Seq(vec![Value::Atom(0), Value::Atom(1)]);
        assert!(c.admits(&long));
        assert!(!c.contains(&long));
        assert!(!c.admits(&Value::Seq(vec![Value::Atom(2)])));
    }

    #[test]
    fn mixed_radix_order() {
        let all: Vec<Vec<usize>> = mixed_radix(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(mixed_radix(0, 0).count(), 1);
        assert_eq!(mixed_radix(0, 2).count(), 0);
    }
}
