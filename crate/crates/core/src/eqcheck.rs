//! Decidable extensional equality over function tables.
//!
//! Functions here are tables, so table identity (intensional `=`) and
//! pointwise agreement (`≐`) coincide at level one. Both entry points are
//! kept: [`ext_eq`] for typed tables and [`extify_eq`] for the lifted tower,
//! which is what function-valued codomains such as Reader need at level two.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::carrier::{Caps, CarrierDesc, FiniteType};
use crate::error::{Error, Result};
use crate::quant::{search, Binder, Mismatch, Quantifier};
use crate::report::LawReport;
use crate::table::FnTable;
use crate::value::Value;

/// Verdict of an equality check. `witness` is present iff `equal` is
/// false, and is the least disagreement in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqReport {
    pub equal: bool,
    pub witness: Option<EqWitness>,
    /// Number of level-0 comparisons performed.
    pub checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqWitness {
    /// Inputs leading to the disagreement, outermost first.
    pub path: Vec<Value>,
    pub left: Value,
    pub right: Value,
}

impl EqWitness {
    pub fn input(&self) -> &Value {
        &self.path[0]
    }
}

impl EqReport {
    fn equal(checked: u64) -> Self {
        EqReport {
            equal: true,
            witness: None,
            checked,
        }
    }
}

/// `f ≐ g`: agreement at every domain element, scanned in index order.
pub fn ext_eq(f: &FnTable, g: &FnTable) -> Result<EqReport> {
    if f.domain().size != g.domain().size || f.codomain() != g.codomain() {
        return Err(Error::Usage(format!(
            "ext_eq on {} -> {} vs {} -> {}",
            f.domain().name,
            f.codomain(),
            g.domain().name,
            g.codomain()
        )));
    }
    for (i, (l, r)) in f.entries().iter().zip(g.entries()).enumerate() {
        if l != r {
            return Ok(EqReport {
                equal: false,
                witness: Some(EqWitness {
                    path: vec![Value::Atom(i as u32)],
                    left: l.clone(),
                    right: r.clone(),
                }),
                checked: i as u64 + 1,
            });
        }
    }
    Ok(EqReport::equal(f.entries().len() as u64))
}

/// The `extify` tower on values: level 0 is canonical equality, level
/// `k + 1` holds when level `k` holds at every entry of two tables.
pub fn extify_eq(level: usize, f: &Value, g: &Value) -> Result<EqReport> {
    let mut checked = 0;
    let mut path = Vec::new();
    match extify_rec(level, f, g, &mut path, &mut checked)? {
        None => Ok(EqReport::equal(checked)),
        Some((left, right)) => Ok(EqReport {
            equal: false,
            witness: Some(EqWitness { path, left, right }),
            checked,
        }),
    }
}

fn extify_rec(
    level: usize,
    f: &Value,
    g: &Value,
    path: &mut Vec<Value>,
    checked: &mut u64,
) -> Result<Option<(Value, Value)>> {
    if level == 0 {
        *checked += 1;
        return Ok((f != g).then(|| (f.clone(), g.clone())));
    }
    let (Value::Fn(fs), Value::Fn(gs)) = (f, g) else {
        return Err(Error::Usage(format!(
            "extify level {level} needs function tables, got {f} and {g}"
        )));
    };
    if fs.len() != gs.len() {
        return Err(Error::Usage(format!(
            "extify on tables of sizes {} and {}",
            fs.len(),
            gs.len()
        )));
    }
    for (i, (x, y)) in fs.iter().zip(gs).enumerate() {
        path.push(Value::Atom(i as u32));
        if let Some(diff) = extify_rec(level - 1, x, y, path, checked)? {
            return Ok(Some(diff));
        }
        path.pop();
    }
    Ok(None)
}

/// `g ∘ f`.
pub fn compose_tables(g: &FnTable, f: &FnTable) -> Result<FnTable> {
    match f.codomain() {
        CarrierDesc::Base(b) if b.size == g.domain().size => {}
        other => {
            return Err(Error::Usage(format!(
                "cannot compose {} -> {} after {} -> {other}",
                g.domain().name,
                g.codomain(),
                f.domain().name
            )))
        }
    }
    FnTable::tabulate(f.domain(), g.codomain(), |a| g.apply(&f.apply(a)?))
}

pub type Composer<'a> = dyn Fn(&FnTable, &FnTable) -> Result<FnTable> + Sync + 'a;

/// Composition preserves extensional equality: `f ≐ f'` and `g ≐ g'`
/// imply `g ∘ f ≐ g' ∘ f'`.
pub fn check_comp_pres_ee(
    dom_a: &FiniteType,
    dom_b: &FiniteType,
    dom_c: &FiniteType,
    q: &Quantifier,
) -> Result<LawReport> {
    check_comp_pres_ee_with(dom_a, dom_b, dom_c, q, &compose_tables, &compose_tables)
}

/// As [`check_comp_pres_ee`], with the composition used for each side
/// injected so the harness itself can be tested against a faulty one.
pub fn check_comp_pres_ee_with(
    dom_a: &FiniteType,
    dom_b: &FiniteType,
    dom_c: &FiniteType,
    q: &Quantifier,
    compose_left: &Composer<'_>,
    compose_right: &Composer<'_>,
) -> Result<LawReport> {
    let start = Instant::now();
    let caps = Caps::default();
    let b = CarrierDesc::Base(dom_b.clone());
    let c = CarrierDesc::Base(dom_c.clone());
    let fs = Binder::functions("f", dom_a, &b, q, &caps)?;
    let gs = Binder::functions("g", dom_b, &c, q, &caps)?;
    let binders = [Binder::equal_pairs(["f", "f'"], &fs), Binder::equal_pairs(["g", "g'"], &gs)];
    let outcome = search(&binders, |args| {
        let table = |v: &Value, d: &FiniteType, cod: &CarrierDesc| FnTable::from_value(d, cod, v);
        let f = table(args[0], dom_a, &b)?;
        let f2 = table(args[1], dom_a, &b)?;
        let g = table(args[2], dom_b, &c)?;
        let g2 = table(args[3], dom_b, &c)?;
        let left = compose_left(&g, &f)?;
        let right = compose_right(&g2, &f2)?;
        let verdict = ext_eq(&left, &right)?;
        Ok(verdict.witness.map(|w| Mismatch {
            extra: vec![("a".into(), w.path[0].clone())],
            lhs: w.left,
            rhs: w.right,
        }))
    })?;
    let domains = BTreeMap::from([
        ("A".to_string(), dom_a.size),
        ("B".to_string(), dom_b.size),
        ("C".to_string(), dom_c.size),
    ]);
    Ok(LawReport::from_outcome(
        "compPresEE",
        "compPresEE",
        "function",
        domains,
        &binders,
        outcome,
        start.elapsed(),
    ))
}
