//! Ground types: alternatives with strict utilities, menus, consideration
//! sets, and choice distributions.
//!
//! Alternatives are indexed by their position in the [`Universe`]; menus and
//! consideration sets are bitmasks over those indices (bit `i` = alternative
//! `i`). The universe is capped at [`MAX_ALTERNATIVES`] so every subset
//! family stays enumerable.

use std::fmt;

use crate::{Error, Result};

/// Hard cap on universe size; keeps subsets bitmask-encodable and every
/// per-menu subset enumeration at most 2^16 entries.
pub const MAX_ALTERNATIVES: usize = 16;

/// Comparison slack for probability arithmetic (sums to one, monotonicity,
/// dominance of one probability over another).
pub const EPSILON: f64 = 1e-9;

/// The full set of alternatives, each with a distinct real-valued utility.
///
/// Utilities are strict by construction: ties are rejected, so every
/// non-empty subset has a unique best element and preference-maximization
/// never needs a tie-break.
#[derive(Clone, Debug, PartialEq)]
pub struct Universe {
    labels: Vec<String>,
    utilities: Vec<f64>,
}

impl Universe {
    /// Builds a universe from `(label, utility)` pairs in presentation order.
    pub fn new<S: Into<String>>(pairs: Vec<(S, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("universe must be non-empty".into()));
        }
        if pairs.len() > MAX_ALTERNATIVES {
            return Err(Error::Capacity(format!(
                "universe has {} alternatives; at most {MAX_ALTERNATIVES} supported",
                pairs.len()
            )));
        }
        let mut labels = Vec::with_capacity(pairs.len());
        let mut utilities = Vec::with_capacity(pairs.len());
        for (label, utility) in pairs {
            let label = label.into();
            if !utility.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "utility of {label} must be finite"
                )));
            }
            if labels.contains(&label) {
                return Err(Error::InvalidInput(format!("duplicate label {label}")));
            }
            if utilities.contains(&utility) {
                return Err(Error::InvalidInput(format!(
                    "utility {utility} of {label} ties another alternative; utilities must be distinct"
                )));
            }
            labels.push(label);
            utilities.push(utility);
        }
        Ok(Self { labels, utilities })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn utility(&self, index: usize) -> f64 {
        self.utilities[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The menu containing every alternative.
    pub fn full_menu(&self) -> Menu {
        Menu {
            bits: (1u32 << self.len()) - 1,
        }
    }

    /// Renders a subset as `{A, B}` using this universe's labels.
    pub fn describe(&self, subset: Subset) -> String {
        let names: Vec<&str> = subset.indices().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// A (possibly empty) set of alternatives, encoded as a bitmask over
/// universe indices. Because the representation is a set, member order can
/// never influence any downstream computation.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subset {
    bits: u32,
}

impl Subset {
    pub const EMPTY: Subset = Subset { bits: 0 };

    pub fn from_bits(bits: u32) -> Self {
        Self { bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u32;
        for i in indices {
            bits |= 1 << i;
        }
        Self { bits }
    }

    /// Resolves labels against a universe. Unknown labels are rejected;
    /// duplicates collapse (it is a set).
    pub fn from_labels<S: AsRef<str>>(universe: &Universe, labels: &[S]) -> Result<Self> {
        let mut bits = 0u32;
        for l in labels {
            let i = universe
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownAlternative(l.as_ref().to_string()))?;
            bits |= 1 << i;
        }
        Ok(Self { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.bits & (1 << index) != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn insert(self, index: usize) -> Subset {
        Subset {
            bits: self.bits | (1 << index),
        }
    }

    pub fn remove(self, index: usize) -> Subset {
        Subset {
            bits: self.bits & !(1 << index),
        }
    }

    /// Member indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..32u32).filter_map(move |i| (bits & (1 << i) != 0).then_some(i as usize))
    }
}

/// A non-empty set of alternatives offered for choice.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Menu {
    bits: u32,
}

impl Menu {
    /// Validates non-emptiness and containment in `universe`.
    pub fn new(universe: &Universe, subset: Subset) -> Result<Self> {
        if subset.is_empty() {
            return Err(Error::InvalidInput("menu must be non-empty".into()));
        }
        if !subset.is_subset_of(universe.full_menu().as_subset()) {
            return Err(Error::InvalidInput(
                "menu contains indices outside the universe".into(),
            ));
        }
        Ok(Self {
            bits: subset.bits(),
        })
    }

    pub fn from_labels<S: AsRef<str>>(universe: &Universe, labels: &[S]) -> Result<Self> {
        Menu::new(universe, Subset::from_labels(universe, labels)?)
    }

    pub fn as_subset(self) -> Subset {
        Subset { bits: self.bits }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false // non-empty by construction
    }

    pub fn contains(self, index: usize) -> bool {
        self.as_subset().contains(index)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        self.as_subset().indices()
    }
}

/// The utility-maximal member of `subset`, or `None` for the empty set.
///
/// Errors if `subset` mentions indices outside the universe.
pub fn max_preferred(universe: &Universe, subset: Subset) -> Result<Option<usize>> {
    if !subset.is_subset_of(universe.full_menu().as_subset()) {
        return Err(Error::InvalidInput(
            "subset contains indices outside the universe".into(),
        ));
    }
    Ok(subset
        .indices()
        .max_by(|&a, &b| universe.utility(a).total_cmp(&universe.utility(b))))
}

/// All subsets of `menu`, ordered by ascending rank: rank `j` maps bit `i`
/// of `j` to the `i`-th menu member (members taken in ascending universe
/// index). Rank 0 is the empty set, rank 2^|menu| - 1 the full menu.
///
/// The universe cap of [`MAX_ALTERNATIVES`] bounds the family at 2^16.
pub fn enumerate_subsets(menu: Menu, include_empty: bool) -> Vec<Subset> {
    let members: Vec<usize> = menu.indices().collect();
    let start = if include_empty { 0u32 } else { 1u32 };
    (start..1u32 << members.len())
        .map(|rank| {
            Subset::from_indices(
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| rank & (1 << i) != 0)
                    .map(|(_, &m)| m),
            )
        })
        .collect()
}

/// A probability distribution over the members of a menu, plus the mass of
/// the no-choice outcome (empty consideration under a rule that does not
/// renormalize it away).
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiceDistribution {
    menu: Menu,
    probs: Vec<(usize, f64)>, // ascending index, one entry per menu member
    no_choice: f64,
}

impl ChoiceDistribution {
    /// `probs` maps every menu member to its probability; masses must be
    /// non-negative and total one with `no_choice` (within [`EPSILON`]).
    pub fn new(menu: Menu, probs: Vec<(usize, f64)>, no_choice: f64) -> Result<Self> {
        let mut probs = probs;
        probs.sort_by_key(|&(i, _)| i);
        let covered = Subset::from_indices(probs.iter().map(|&(i, _)| i));
        if covered != menu.as_subset() || probs.len() != menu.len() {
            return Err(Error::InvalidInput(
                "distribution must assign exactly one mass to each menu member".into(),
            ));
        }
        if no_choice < -EPSILON || probs.iter().any(|&(_, p)| p < -EPSILON) {
            return Err(Error::InvalidInput(
                "distribution has a negative mass".into(),
            ));
        }
        let total: f64 = probs.iter().map(|&(_, p)| p).sum::<f64>() + no_choice;
        if (total - 1.0).abs() > EPSILON {
            return Err(Error::InvalidInput(format!(
                "distribution masses total {total}, expected 1"
            )));
        }
        Ok(Self {
            menu,
            probs,
            no_choice,
        })
    }

    pub fn menu(&self) -> Menu {
        self.menu
    }

    /// Probability of alternative `index`; zero for non-members.
    pub fn prob(&self, index: usize) -> f64 {
        self.probs
            .iter()
            .find(|&&(i, _)| i == index)
            .map_or(0.0, |&(_, p)| p)
    }

    pub fn no_choice(&self) -> f64 {
        self.no_choice
    }

    /// `(index, probability)` pairs in ascending index order.
    pub fn entries(&self) -> &[(usize, f64)] {
        &self.probs
    }

    /// Half the L1 distance between two distributions on the same menu,
    /// counting the no-choice outcome as one more cell.
    pub fn total_variation(&self, other: &ChoiceDistribution) -> Result<f64> {
        if self.menu != other.menu {
            return Err(Error::InvalidInput(
                "total variation requires distributions on the same menu".into(),
            ));
        }
        let mut l1 = (self.no_choice - other.no_choice).abs();
        for &(i, p) in &self.probs {
            l1 += (p - other.prob(i)).abs();
        }
        Ok(l1 / 2.0)
    }
}

impl fmt::Display for ChoiceDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .probs
            .iter()
            .map(|&(i, p)| format!("#{i}: {p:.6}"))
            .collect();
        write!(f, "[{}; no-choice {:.6}]", cells.join(", "), self.no_choice)
    }
}
