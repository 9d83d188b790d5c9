use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use crate::quant::{Binder, Mode, Outcome};

/// Outcome of checking one law (or theorem) for one instance.
///
/// `pass` is true exactly when `witness` is absent. `elapsed` is excluded
/// from serialization so that serialized reports are deterministic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub name: String,
    pub instance: String,
    pub domains: BTreeMap<String, u32>,
    /// Non-domain parameters such as step counts.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
    pub quantifiers: Vec<QuantStat>,
    pub checked: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantStat {
    pub vars: String,
    #[serde(flatten)]
    pub mode: Mode,
}

/// Counterexample with every bound variable rendered canonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub bindings: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }
}

impl LawReport {
    pub fn from_outcome(
        law: &str,
        name: &str,
        instance: &str,
        domains: BTreeMap<String, u32>,
        binders: &[Binder],
        outcome: Outcome,
        elapsed: Duration,
    ) -> Self {
        let witness = outcome.failure.map(|found| {
            let mut bindings: Vec<(String, String)> = found
                .bindings
                .iter()
                .map(|(n, v)| (n.clone(), v.to_string()))
                .collect();
            bindings.extend(found.mismatch.extra.iter().map(|(n, v)| (n.clone(), v.to_string())));
            Witness {
                bindings,
                lhs: found.mismatch.lhs.to_string(),
                rhs: found.mismatch.rhs.to_string(),
            }
        });
        LawReport {
            law: law.to_string(),
            name: name.to_string(),
            instance: instance.to_string(),
            domains,
            params: BTreeMap::new(),
            quantifiers: binders
                .iter()
                .map(|b| QuantStat {
                    vars: b.names.join(","),
                    mode: b.mode.clone(),
                })
                .collect(),
            checked: outcome.checked,
            pass: witness.is_none(),
            witness,
            note: None,
            elapsed,
        }
    }

    /// Joins the searches for several sub-statements of one theorem, in
    /// order. The first failing part supplies the witness and a note naming
    /// it, and `checked` stops there as it does within a single search.
    pub fn from_parts(
        law: &str,
        instance: &str,
        domains: BTreeMap<String, u32>,
        parts: Vec<(&str, Vec<Binder>, Outcome)>,
        elapsed: Duration,
    ) -> Self {
        let mut quantifiers = Vec::new();
        let mut checked = 0;
        let mut failure = None;
        for (label, binders, outcome) in parts {
            quantifiers.extend(binders.iter().map(|b| QuantStat {
                vars: format!("{label}:{}", b.names.join(",")),
                mode: b.mode.clone(),
            }));
            if failure.is_none() {
                checked += outcome.checked;
                failure = outcome.failure.map(|f| (label.to_string(), f));
            }
        }
        let note = failure.as_ref().map(|(label, _)| format!("fails {label}"));
        let mut report = LawReport::from_outcome(
            law,
            law,
            instance,
            domains,
            &[],
            Outcome {
                checked,
                failure: failure.map(|(_, f)| f),
            },
            elapsed,
        );
        report.quantifiers = quantifiers;
        report.note = note;
        report
    }

    pub fn with_param(mut self, key: &str, value: u64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// One line per report for text output.
    pub fn summary_line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let title = if self.law == self.name {
            format!("{:<31}", self.law)
        } else {
            format!("{:<6} {:<24}", self.law, self.name)
        };
        let mut line = format!("{verdict} {title} {:<12} checked={}", self.instance, self.checked);
        if let Some(w) = &self.witness {
            let binds: Vec<String> = w.bindings.iter().map(|(n, v)| format!("{n}={v}")).collect();
            line.push_str(&format!(" witness: {} ; lhs={} rhs={}", binds.join(" "), w.lhs, w.rhs));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!(" ({n})"));
        }
        line
    }
}
