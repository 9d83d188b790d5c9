//! Functions represented extensionally as finite tables.

use crate::carrier::{enumerate_carrier_with, enumerate_domain, mixed_radix, Caps, CarrierDesc, FiniteType};
use crate::error::{Error, Result};
use crate::quant::{Mode, Quantifier};
use crate::value::Value;

/// A function from an enumerated domain, one entry per atom index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FnTable {
    domain: FiniteType,
    codomain: CarrierDesc,
    entries: Vec<Value>,
}

impl FnTable {
    /// Validates entry count and that every entry has the codomain's shape.
    pub fn new(domain: FiniteType, codomain: CarrierDesc, entries: Vec<Value>) -> Result<Self> {
        if entries.len() != domain.size as usize {
            return Err(Error::Usage(format!(
                "table over {} needs {} entries, got {}",
                domain.name,
                domain.size,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|v| !codomain.admits(v)) {
            return Err(Error::Usage(format!("entry {bad} does not inhabit {codomain}")));
        }
        Ok(FnTable {
            domain,
            codomain,
            entries,
        })
    }

    pub fn tabulate<F>(domain: &FiniteType, codomain: &CarrierDesc, mut f: F) -> Result<Self>
    where
        F: FnMut(&Value) -> Result<Value>,
    {
        let entries = enumerate_domain(domain).iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        FnTable::new(domain.clone(), codomain.clone(), entries)
    }

    pub fn identity(domain: &FiniteType) -> Self {
        FnTable {
            domain: domain.clone(),
            codomain: CarrierDesc::Base(domain.clone()),
            entries: enumerate_domain(domain),
        }
    }

    /// Reinterprets a `Value::Fn` as a table over `domain`.
    pub fn from_value(domain: &FiniteType, codomain: &CarrierDesc, v: &Value) -> Result<Self> {
        match v {
            Value::Fn(entries) => FnTable::new(domain.clone(), codomain.clone(), entries.clone()),
            other => Err(Error::shape("function table", other)),
        }
    }

    pub fn domain(&self) -> &FiniteType {
        &self.domain
    }

    pub fn codomain(&self) -> &CarrierDesc {
        &self.codomain
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    pub fn apply(&self, x: &Value) -> Result<Value> {
        match x {
            Value::Atom(i) if *i < self.domain.size => Ok(self.entries[*i as usize].clone()),
            other => Err(Error::Usage(format!("{other} is not in domain {}", self.domain.name))),
        }
    }

    pub fn to_value(&self) -> Value {
        Value::Fn(self.entries.clone())
    }
}

/// Tables `dom -> cod`: every table in mixed-radix order (entry 0 most
/// significant) when the function space fits the budget, otherwise
/// `q.budget` tables drawn uniformly with replacement.
pub fn enumerate_functions(dom: &FiniteType, cod: &CarrierDesc, q: &Quantifier) -> Result<Vec<FnTable>> {
    enumerate_functions_with(dom, cod, q, &Caps::default()).map(|(tables, _)| tables)
}

pub fn enumerate_functions_with(
    dom: &FiniteType,
    cod: &CarrierDesc,
    q: &Quantifier,
    caps: &Caps,
) -> Result<(Vec<FnTable>, Mode)> {
    let elems = enumerate_carrier_with(cod, caps)?;
    let population = (elems.len() as u128).checked_pow(dom.size).unwrap_or(u128::MAX);
    let build = |digits: Vec<usize>| FnTable {
        domain: dom.clone(),
        codomain: cod.clone(),
        entries: digits.into_iter().map(|i| elems[i].clone()).collect(),
    };
    if population <= q.budget as u128 {
        let tables = mixed_radix(elems.len(), dom.size as usize).map(build).collect();
        Ok((tables, Mode::Exhaustive { count: population as u64 }))
    } else {
        let mut rng = q.rng();
        let tables = (0..q.budget)
            .map(|_| build((0..dom.size).map(|_| q.draw(&mut rng, elems.len())).collect()))
            .collect();
        Ok((
            tables,
            Mode::Sampled {
                count: q.budget,
                population: population.to_string(),
            },
        ))
    }
}
