//! JSON wire format for attention rules. The schema is deliberately small
//! and field names are normative, so rule files double as test vectors for
//! other implementations:
//!
//! ```json
//! {
//!   "alternatives": ["A", "B"],
//!   "utilities": { "A": 2.0, "B": 1.0 },
//!   "mode": "renormalize",
//!   "attention": [
//!     { "menu": ["A", "B"], "consider": ["A"], "prob": 0.2 },
//!     { "menu": ["A", "B"], "consider": ["A", "B"], "prob": 0.8 }
//!   ]
//! }
//! ```
//!
//! Probabilities round-trip bit-exactly: serialization uses the shortest
//! decimal that re-parses to the same `f64`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::attention::{load_explicit, AttentionRule, EmptySetMode};
use crate::core::{Menu, Subset, Universe};
use crate::{Error, Result};

/// How a document spells the empty-consideration behavior.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeField {
    Renormalize,
    NoChoice,
}

impl From<ModeField> for EmptySetMode {
    fn from(m: ModeField) -> Self {
        match m {
            ModeField::Renormalize => EmptySetMode::Renormalize,
            ModeField::NoChoice => EmptySetMode::NoChoice,
        }
    }
}

impl From<EmptySetMode> for ModeField {
    fn from(m: EmptySetMode) -> Self {
        match m {
            EmptySetMode::Renormalize => ModeField::Renormalize,
            EmptySetMode::NoChoice => ModeField::NoChoice,
        }
    }
}

/// One `(menu, consideration set, mass)` row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttentionEntry {
    pub menu: Vec<String>,
    /// May be empty (the no-choice event) in `no-choice` mode only.
    pub consider: Vec<String>,
    pub prob: f64,
}

/// A complete rule document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    /// Alternative labels; their order fixes the index order.
    pub alternatives: Vec<String>,
    /// One utility per alternative, no extras.
    pub utilities: BTreeMap<String, f64>,
    pub mode: ModeField,
    pub attention: Vec<AttentionEntry>,
}

impl RuleFile {
    /// Parses a document from JSON text.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad rule file: {e}")))
    }

    /// Reads and parses a document from disk.
    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Serializes to pretty JSON (stable field order, shortest round-trip
    /// decimals).
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::Parse(format!("cannot serialize rule file: {e}")))
    }

    /// Writes the document to disk.
    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(fs::write(path, self.to_json()? + "\n")?)
    }

    /// Validates the document into a live rule.
    pub fn to_rule(&self) -> Result<AttentionRule> {
        let mut pairs = Vec::with_capacity(self.alternatives.len());
        for label in &self.alternatives {
            let utility = self.utilities.get(label).copied().ok_or_else(|| {
                Error::Parse(format!("alternative {label:?} has no utility entry"))
            })?;
            pairs.push((label.clone(), utility));
        }
        for label in self.utilities.keys() {
            if !self.alternatives.contains(label) {
                return Err(Error::Parse(format!(
                    "utility entry {label:?} names no listed alternative"
                )));
            }
        }
        let universe = Universe::new(pairs)?;

        let mut entries = Vec::with_capacity(self.attention.len());
        for e in &self.attention {
            let menu = Menu::from_labels(&universe, &e.menu)?;
            let consider = Subset::from_labels(&universe, &e.consider)?;
            entries.push((menu, consider, e.prob));
        }
        load_explicit(universe, self.mode.into(), &entries)
    }

    /// Renders a live rule back into a document (entries in stored order).
    pub fn from_rule(rule: &AttentionRule) -> Self {
        let universe = rule.universe();
        let labels =
            |s: Subset| -> Vec<String> { s.indices().map(|i| universe.label(i).to_string()).collect() };
        RuleFile {
            alternatives: (0..universe.len())
                .map(|i| universe.label(i).to_string())
                .collect(),
            utilities: (0..universe.len())
                .map(|i| (universe.label(i).to_string(), universe.utility(i)))
                .collect(),
            mode: rule.mode().into(),
            attention: rule
                .flat_entries()
                .into_iter()
                .map(|(menu, consider, prob)| AttentionEntry {
                    menu: labels(menu.as_subset()),
                    consider: labels(consider),
                    prob,
                })
                .collect(),
        }
    }
}
