//! Pass/fail records shared by all checkers.

use serde::Serialize;

use crate::forms::Form;
use crate::polytrig::{constant_mod_2pi, PolyTrig};

/// Outcome of one instance of an identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    /// Constant residue modulo 2π, or a description of what is left over.
    pub residue: String,
}

impl CheckItem {
    pub fn new(label: impl Into<String>, passed: bool, residue: impl Into<String>) -> Self {
        CheckItem {
            label: label.into(),
            passed,
            residue: residue.into(),
        }
    }

    /// Passes iff `diff` is a constant in 2πℤ.
    pub fn phase(label: impl Into<String>, diff: &PolyTrig) -> Self {
        match constant_mod_2pi(diff) {
            Some(r) => CheckItem::new(label, r.is_zero(), r.to_string()),
            None => CheckItem::new(label, false, format!("not constant: {diff}")),
        }
    }

    /// Passes iff `diff` vanishes identically (up to float tolerances).
    pub fn exact(label: impl Into<String>, diff: &PolyTrig) -> Self {
        if diff.is_negligible() {
            CheckItem::new(label, true, "0")
        } else {
            CheckItem::new(label, false, diff.to_string())
        }
    }

    /// Passes iff the form `diff` vanishes.
    pub fn form(label: impl Into<String>, diff: &Form) -> Self {
        if diff.components().all(|(_, f)| f.is_negligible()) {
            CheckItem::new(label, true, "0")
        } else {
            CheckItem::new(label, false, diff.to_string())
        }
    }
}

/// A named identity checked on a list of instances.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    /// The identity in formula form.
    pub identity: String,
    pub passed: bool,
    pub items: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(
        check: impl Into<String>,
        identity: impl Into<String>,
        items: Vec<CheckItem>,
    ) -> Self {
        let passed = items.iter().all(|i| i.passed);
        CheckReport {
            check: check.into(),
            identity: identity.into(),
            passed,
            items,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

pub(crate) fn fmt_lattice(i: &[i64]) -> String {
    let parts: Vec<String> = i.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
