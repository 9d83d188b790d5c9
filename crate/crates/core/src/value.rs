//! The closed value universe.
//!
//! Every carrier the checker quantifies over is built from [`Value`]: atoms
//! index a finite domain, and the remaining constructors house the monadic
//! structures (`Opt` for Maybe, `Seq` for List, `Dist` for finite
//! probability), fixed-length vectors for trajectories, function tables for
//! Reader values, and exact rationals for rewards and measures.
//!
//! Structural equality of canonical values is the executable meaning of
//! intensional equality. [`Value`]'s `Ord` is the canonical order used for
//! enumeration and for picking least counterexamples.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Atom(u32),
    Opt(Option<Box<Value>>),
    Seq(Vec<Value>),
    /// Finite distribution. Canonical form: sorted by value, no duplicate
    /// values, strictly positive weights summing to exactly one.
    Dist(Vec<(Value, Rational)>),
    /// Fixed-length vector; the length is the item count.
    Vector(Vec<Value>),
    /// Function table indexed by the atoms of its (implicit) domain.
    Fn(Vec<Value>),
    Num(Rational),
}

impl Value {
    pub fn none() -> Value {
        Value::Opt(None)
    }

    pub fn some(v: Value) -> Value {
        Value::Opt(Some(Box::new(v)))
    }

    pub fn int(n: i64) -> Value {
        Value::Num(Rational::from_integer(BigInt::from(n)))
    }

    /// Builds a distribution from weighted entries, rejecting non-positive
    /// weights and totals other than one. The result is canonical.
    pub fn dist(entries: Vec<(Value, Rational)>) -> Result<Value> {
        if entries.is_empty() {
            return Err(Error::Usage("distribution with empty support".into()));
        }
        let mut total = Rational::zero();
        for (v, w) in &entries {
            if !w.is_positive() {
                return Err(Error::Usage(format!("non-positive weight {w} on {v}")));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::Usage(format!("distribution weights sum to {total}, not 1")));
        }
        Ok(Value::Dist(merge_sorted(entries)))
    }

    pub fn point(v: Value) -> Value {
        Value::Dist(vec![(v, Rational::one())])
    }

    pub fn as_atom(&self) -> Result<u32> {
        match self {
            Value::Atom(i) => Ok(*i),
            other => Err(Error::shape("atom", other)),
        }
    }

    pub fn as_num(&self) -> Result<&Rational> {
        match self {
            Value::Num(r) => Ok(r),
            other => Err(Error::shape("number", other)),
        }
    }

    /// Applies a function table to an atom argument.
    pub fn apply(&self, arg: &Value) -> Result<Value> {
        match self {
            Value::Fn(entries) => {
                let i = arg.as_atom()? as usize;
                entries.get(i).cloned().ok_or_else(|| {
                    Error::Usage(format!("atom #{i} outside table of size {}", entries.len()))
                })
            }
            other => Err(Error::shape("function table", other)),
        }
    }

    /// Depth of directly nested function tables (`fn[fn[..]]` has depth 2).
    pub fn fn_depth(&self) -> usize {
        match self {
            Value::Fn(entries) => 1 + entries.first().map_or(0, Value::fn_depth),
            _ => 0,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Atom(_) => 0,
            Value::Num(_) => 1,
            Value::Opt(_) => 2,
            Value::Seq(_) => 3,
            Value::Vector(_) => 4,
            Value::Dist(_) => 5,
            Value::Fn(_) => 6,
        }
    }
}

/// Sorts entries by value and merges equal values by adding weights.
pub(crate) fn merge_sorted(mut entries: Vec<(Value, Rational)>) -> Vec<(Value, Rational)> {
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Value, Rational)> = Vec::with_capacity(entries.len());
    for (v, w) in entries {
        match out.last_mut() {
            Some((last, acc)) if *last == v => *acc += w,
            _ => out.push((v, w)),
        }
    }
    out
}

fn cmp_lists<T, F>(a: &[T], b: &[T], mut cmp: F) -> Ordering
where
    F: FnMut(&T, &T) -> Ordering,
{
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .zip(b)
            .map(|(x, y)| cmp(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Canonical order: constructors by rank, then shorter lists first, then
/// lexicographic by element.
impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        use Value::*;
        match (self, other) {
            (Atom(a), Atom(b)) => a.cmp(b),
            (Num(a), Num(b)) => a.cmp(b),
            (Opt(a), Opt(b)) => a.cmp(b),
            (Seq(a), Seq(b)) | (Vector(a), Vector(b)) | (Fn(a), Fn(b)) => cmp_lists(a, b, Ord::cmp),
            (Dist(a), Dist(b)) => {
                cmp_lists(a, b, |x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on canonical values; `Equal` is the executable `=`.
///
/// Values of different constructors are ordered by constructor rank, which
/// only happens when a caller compares values of different carriers.
pub fn canonical_compare(a: &Value, b: &Value) -> Ordering {
    a.cmp(b)
}

fn write_list(f: &mut fmt::Formatter<'_>, open: &str, items: &[Value], close: &str) -> fmt::Result {
    f.write_str(open)?;
    for (i, v) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(close)
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

/// Canonical text: `#i`, `none`, `some v`, `[v,..]`, `{v: p/q, ..}`,
/// `<v,..>`, `fn[v,..]`, and rationals as `n` or `p/q`.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(i) => write!(f, "#{i}"),
            Value::Opt(None) => f.write_str("none"),
            Value::Opt(Some(v)) => write!(f, "some {v}"),
            Value::Seq(items) => write_list(f, "[", items, "]"),
            Value::Vector(items) => write_list(f, "<", items, ">"),
            Value::Fn(items) => write_list(f, "fn[", items, "]"),
            Value::Dist(entries) => {
                f.write_str("{")?;
                for (i, (v, w)) in entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}: ")?;
                    write_ratio(f, w)?;
                }
                f.write_str("}")
            }
            Value::Num(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Value::Num(r) => write_ratio(f, r),
        }
    }
}

impl std::str::FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Value> {
        parse_value(s)
    }
}

/// Parses the canonical text rendering. Distributions are validated and
/// canonicalized; other constructors are taken as written.
pub fn parse_value(text: &str) -> Result<Value> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.value()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{tok}`")))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let neg = self.eat("-");
        let numer: BigInt = self.digits()?.parse().expect("digits parse");
        let denom: BigInt = if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            self.digits()?.parse().expect("digits parse")
        } else {
            BigInt::one()
        };
        if denom.is_zero() {
            return Err(self.err("zero denominator"));
        }
        let r = Rational::new(numer, denom);
        Ok(if neg { -r } else { r })
    }

    fn items(&mut self, close: &str) -> Result<Vec<Value>> {
        let mut items = Vec::new();
        if self.eat(close) {
            return Ok(items);
        }
        loop {
            items.push(self.value()?);
            if self.eat(close) {
                return Ok(items);
            }
            self.expect(",")?;
        }
    }

    fn value(&mut self) -> Result<Value> {
        match self.peek() {
            Some(b'#') => {
                self.pos += 1;
                let idx = self.digits()?;
                idx.parse().map(Value::Atom).map_err(|_| self.err("atom index out of range"))
            }
            Some(b'[') => {
                self.pos += 1;
                Ok(Value::Seq(self.items("]")?))
            }
            Some(b'<') => {
                self.pos += 1;
                Ok(Value::Vector(self.items(">")?))
            }
            Some(b'{') => {
                self.pos += 1;
                let mut entries = Vec::new();
                if !self.eat("}") {
                    loop {
                        let v = self.value()?;
                        self.expect(":")?;
                        let w = self.rational()?;
                        entries.push((v, w));
                        if self.eat("}") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                let at = self.pos;
                Value::dist(entries).map_err(|e| Error::Parse {
                    pos: at,
                    msg: e.to_string(),
                })
            }
            Some(b'-') | Some(b'0'..=b'9') => self.rational().map(Value::Num),
            Some(_) if self.eat("none") => Ok(Value::none()),
            Some(_) if self.eat("some") => Ok(Value::some(self.value()?)),
            Some(_) if self.eat("fn[") => Ok(Value::Fn(self.items("]")?)),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
