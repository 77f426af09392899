//! Attention rules: the probability that a decision maker considers each
//! subset of a menu, together with the monotonicity validator and rule
//! constructors.
//!
//! A rule stores, per menu, a map from consideration set to probability
//! mass. Tables may be partial: a menu absent from the table is simply not
//! covered (reported as incompleteness, not invented). The key structural
//! property is *monotonicity*: removing an unconsidered alternative from
//! the menu can only make a consideration set more likely,
//! `mu(T | S) <= mu(T | S \ {a})` for every `a` in `S \ T`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{enumerate_subsets, Menu, Subset, Universe, EPSILON};
use crate::harness::split_seed;
use crate::{Error, Result};

/// Dense constructors materialize every menu of the universe (~3^n table
/// entries); this cap keeps that tractable. Per-menu enumeration still
/// allows universes up to the bitmask cap of 16.
pub const DENSE_UNIVERSE_CAP: usize = 12;

/// Whole-rule resamples [`random_monotone_rule`] is allowed before giving
/// up with a generation error.
pub const GENERATION_RETRY_BUDGET: u64 = 256;

/// What a rule does with the probability of considering nothing.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EmptySetMode {
    /// Empty-set mass is folded proportionally into the non-empty sets;
    /// a choice is always made.
    Renormalize,
    /// The empty set may carry mass; it surfaces as an explicit no-choice
    /// outcome.
    NoChoice,
}

/// A (possibly partial) random attention rule over a fixed universe.
#[derive(Clone, Debug, PartialEq)]
pub struct AttentionRule {
    universe: Universe,
    mode: EmptySetMode,
    table: BTreeMap<u32, BTreeMap<u32, f64>>, // menu bits -> consideration bits -> mass
}

/// One failed instance of the monotonicity inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityViolation {
    /// The consideration set whose mass grew when the menu grew.
    pub consideration: Subset,
    /// The larger menu.
    pub menu: Menu,
    /// The alternative removed to reach the smaller menu.
    pub removed: usize,
    /// Mass of `consideration` under the larger menu.
    pub mass_larger: f64,
    /// Mass of `consideration` under the smaller menu.
    pub mass_smaller: f64,
}

impl MonotonicityViolation {
    pub fn describe(&self, universe: &Universe) -> String {
        format!(
            "mu({} | {}) = {} exceeds mu({} | {}) = {} after dropping {}",
            universe.describe(self.consideration),
            universe.describe(self.menu.as_subset()),
            self.mass_larger,
            universe.describe(self.consideration),
            universe.describe(self.menu.as_subset().remove(self.removed)),
            self.mass_smaller,
            universe.label(self.removed),
        )
    }
}

/// Outcome of [`validate`]: structural health of a rule's table.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub monotonicity_violations: Vec<MonotonicityViolation>,
    /// Stored menus whose masses do not total one (menu, observed total).
    pub degenerate_menus: Vec<(Menu, f64)>,
    /// Menus with at least two members that the table does not cover.
    pub missing_menus: Vec<Menu>,
    /// Monotonicity inequalities actually compared (both menus stored).
    pub comparisons: u64,
}

impl ValidationReport {
    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violations.is_empty()
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.degenerate_menus.is_empty()
    }

    /// Complete = every menu with two or more members is stored. Singleton
    /// menus are derivable (the only non-empty consideration set is the
    /// singleton itself) and so are never required.
    pub fn is_complete(&self) -> bool {
        self.missing_menus.is_empty()
    }

    pub fn all_good(&self) -> bool {
        self.is_monotone() && self.is_non_degenerate() && self.is_complete()
    }
}

impl AttentionRule {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn mode(&self) -> EmptySetMode {
        self.mode
    }

    /// Stored menus in ascending bitmask order.
    pub fn menus(&self) -> impl Iterator<Item = Menu> + '_ {
        self.table.keys().map(|&bits| {
            Menu::new(&self.universe, Subset::from_bits(bits)).expect("stored menus are valid")
        })
    }

    pub fn covers(&self, menu: Menu) -> bool {
        self.table.contains_key(&menu.bits())
    }

    /// Mass of `consideration` under `menu`; zero when unlisted.
    pub fn mass(&self, menu: Menu, consideration: Subset) -> f64 {
        self.table
            .get(&menu.bits())
            .and_then(|m| m.get(&consideration.bits()))
            .copied()
            .unwrap_or(0.0)
    }

    /// Stored `(consideration, mass)` entries for `menu` in ascending
    /// bitmask order, or `None` if the menu is not covered.
    pub fn entries(&self, menu: Menu) -> Option<impl Iterator<Item = (Subset, f64)> + '_> {
        self.table.get(&menu.bits()).map(|m| {
            m.iter()
                .map(|(&bits, &mass)| (Subset::from_bits(bits), mass))
        })
    }

    /// Flat entry listing `(menu, consideration, mass)` for serialization,
    /// ascending by menu bits then consideration bits.
    pub fn flat_entries(&self) -> Vec<(Menu, Subset, f64)> {
        self.table
            .iter()
            .flat_map(|(&menu_bits, subs)| {
                let menu = Menu::new(&self.universe, Subset::from_bits(menu_bits))
                    .expect("stored menus are valid");
                subs.iter()
                    .map(move |(&bits, &mass)| (menu, Subset::from_bits(bits), mass))
            })
            .collect()
    }

    /// True if every stored menu of size >= 2 puts all its mass on the full
    /// menu (within [`EPSILON`]). Singleton menus are unconstrained: they
    /// cannot hide a better alternative.
    pub fn is_full_attention(&self) -> bool {
        self.menus()
            .filter(|m| m.len() >= 2)
            .all(|m| (self.mass(m, m.as_subset()) - 1.0).abs() <= EPSILON)
    }
}

/// Builds a rule from explicit `(menu, consideration, mass)` entries.
///
/// Exactly the listed entries are stored — unlisted consideration sets have
/// mass zero and unlisted menus are simply not covered. Menus whose masses
/// do not total one are accepted here and flagged by [`validate`]. An
/// empty consideration set is only accepted in no-choice mode.
pub fn load_explicit(
    universe: Universe,
    mode: EmptySetMode,
    entries: &[(Menu, Subset, f64)],
) -> Result<AttentionRule> {
    let mut table: BTreeMap<u32, BTreeMap<u32, f64>> = BTreeMap::new();
    for &(menu, consideration, mass) in entries {
        if !consideration.is_subset_of(menu.as_subset()) {
            return Err(Error::InvalidInput(format!(
                "consideration set {} is not contained in menu {}",
                universe.describe(consideration),
                universe.describe(menu.as_subset())
            )));
        }
        if consideration.is_empty() && mode == EmptySetMode::Renormalize {
            return Err(Error::InvalidInput(
                "empty consideration sets are only allowed in no-choice mode".into(),
            ));
        }
        if !(0.0..=1.0).contains(&mass) {
            return Err(Error::InvalidInput(format!(
                "mass {mass} for {} under {} is outside [0, 1]",
                universe.describe(consideration),
                universe.describe(menu.as_subset())
            )));
        }
        if table
            .entry(menu.bits())
            .or_default()
            .insert(consideration.bits(), mass)
            .is_some()
        {
            return Err(Error::InvalidInput(format!(
                "duplicate entry for {} under {}",
                universe.describe(consideration),
                universe.describe(menu.as_subset())
            )));
        }
    }
    Ok(AttentionRule {
        universe,
        mode,
        table,
    })
}

/// The degenerate-attention benchmark: every menu is considered in full,
/// `mu(S | S) = 1`.
pub fn full_attention(universe: Universe) -> AttentionRule {
    let full = universe.full_menu();
    let mut table: BTreeMap<u32, BTreeMap<u32, f64>> = BTreeMap::new();
    for menu in enumerate_subsets(full, false) {
        table.insert(menu.bits(), BTreeMap::from([(menu.bits(), 1.0)]));
    }
    AttentionRule {
        universe,
        mode: EmptySetMode::Renormalize,
        table,
    }
}

/// Each alternative is considered independently with probability `p`:
/// `mu(T | S) = p^|T| (1-p)^(|S|-|T|)`. In renormalize mode the empty-set
/// mass `(1-p)^|S|` is spread proportionally over the non-empty sets; in
/// no-choice mode it is stored against the empty set.
pub fn independent_attention(
    universe: Universe,
    p: f64,
    mode: EmptySetMode,
) -> Result<AttentionRule> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "consideration probability {p} must lie in (0, 1]"
        )));
    }
    if universe.len() > DENSE_UNIVERSE_CAP {
        return Err(Error::Capacity(format!(
            "independent attention materializes every menu; universe of {} exceeds the cap of {DENSE_UNIVERSE_CAP}",
            universe.len()
        )));
    }
    let full = universe.full_menu();
    let mut table: BTreeMap<u32, BTreeMap<u32, f64>> = BTreeMap::new();
    for menu_subset in enumerate_subsets(full, false) {
        let menu = Menu::new(&universe, menu_subset)?;
        let s = menu.len() as i32;
        let empty_mass = (1.0 - p).powi(s);
        let mut entries = BTreeMap::new();
        for t in enumerate_subsets(menu, false) {
            let raw = p.powi(t.len() as i32) * (1.0 - p).powi(s - t.len() as i32);
            let mass = match mode {
                EmptySetMode::Renormalize => raw / (1.0 - empty_mass),
                EmptySetMode::NoChoice => raw,
            };
            // zero-mass subsets (p = 1) stay out of the table entirely
            if mass > 0.0 {
                entries.insert(t.bits(), mass);
            }
        }
        if mode == EmptySetMode::NoChoice && empty_mass > 0.0 {
            entries.insert(Subset::EMPTY.bits(), empty_mass);
        }
        table.insert(menu.bits(), entries);
    }
    Ok(AttentionRule {
        universe,
        mode,
        table,
    })
}

/// Checks non-degeneracy (stored masses total one per menu, counting the
/// empty set only in no-choice mode), monotonicity (every stored menu pair
/// `S` and `S \ {a}`), and completeness (every menu of size >= 2 stored).
///
/// Only menus present in the table are compared: an absent menu is
/// incompleteness, never a violation.
pub fn validate(rule: &AttentionRule) -> ValidationReport {
    let universe = rule.universe();
    let mut degenerate_menus = Vec::new();
    let mut monotonicity_violations = Vec::new();
    let mut comparisons = 0u64;

    for menu in rule.menus() {
        let total: f64 = rule
            .entries(menu)
            .expect("stored menu")
            .map(|(_, mass)| mass)
            .sum();
        if (total - 1.0).abs() > EPSILON {
            degenerate_menus.push((menu, total));
        }

        for a in menu.indices() {
            let reduced_subset = menu.as_subset().remove(a);
            if reduced_subset.is_empty() {
                continue;
            }
            let reduced = Menu::new(universe, reduced_subset).expect("non-empty");
            if !rule.covers(reduced) {
                continue;
            }
            for t in enumerate_subsets(reduced, true) {
                comparisons += 1;
                let mass_larger = rule.mass(menu, t);
                let mass_smaller = rule.mass(reduced, t);
                if mass_larger > mass_smaller + EPSILON {
                    monotonicity_violations.push(MonotonicityViolation {
                        consideration: t,
                        menu,
                        removed: a,
                        mass_larger,
                        mass_smaller,
                    });
                }
            }
        }
    }

    let missing_menus = enumerate_subsets(universe.full_menu(), false)
        .into_iter()
        .filter(|s| s.len() >= 2)
        .map(|s| Menu::new(universe, s).expect("non-empty"))
        .filter(|&m| !rule.covers(m))
        .collect();

    ValidationReport {
        monotonicity_violations,
        degenerate_menus,
        missing_menus,
        comparisons,
    }
}

/// Draws a complete, monotone, non-degenerate rule with all masses on the
/// grid `{0, 1/g, ..., 1}`, deterministically from a 64-bit seed.
///
/// Construction: menus are processed largest first (ascending bitmask
/// within a size). Monotonicity against each already-fixed superset
/// `S ∪ {a}` gives integer lower bounds on the grid quanta of every
/// consideration set; the remaining quanta are then dropped one at a time
/// into uniformly random consideration sets (ChaCha8 keyed by the seed).
/// With several supersets the pointwise-max lower bounds can overshoot the
/// grid, in which case the whole rule is resampled under a fresh sub-seed,
/// up to [`GENERATION_RETRY_BUDGET`] attempts.
pub fn random_monotone_rule(
    universe: &Universe,
    seed: u64,
    grid_resolution: u32,
) -> Result<AttentionRule> {
    if grid_resolution < 2 {
        return Err(Error::InvalidInput(format!(
            "grid resolution {grid_resolution} must be at least 2"
        )));
    }
    if universe.len() > DENSE_UNIVERSE_CAP {
        return Err(Error::Capacity(format!(
            "random rules materialize every menu; universe of {} exceeds the cap of {DENSE_UNIVERSE_CAP}",
            universe.len()
        )));
    }

    let full = universe.full_menu();
    let mut menus: Vec<Subset> = enumerate_subsets(full, false);
    menus.sort_by_key(|m| (std::cmp::Reverse(m.len()), m.bits()));
    let g = grid_resolution;

    'attempt: for attempt in 0..GENERATION_RETRY_BUDGET {
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, attempt));
        let mut quanta: BTreeMap<u32, BTreeMap<u32, u32>> = BTreeMap::new();

        for &menu_subset in &menus {
            let menu = Menu::new(universe, menu_subset).expect("non-empty");
            let subsets = enumerate_subsets(menu, false);
            let mut q: Vec<u32> = subsets
                .iter()
                .map(|t| {
                    (0..universe.len())
                        .filter(|&a| !menu.contains(a))
                        .map(|a| {
                            quanta
                                .get(&menu.as_subset().insert(a).bits())
                                .and_then(|m| m.get(&t.bits()))
                                .copied()
                                .unwrap_or(0)
                        })
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let bound: u32 = q.iter().sum();
            if bound > g {
                continue 'attempt;
            }
            for _ in 0..g - bound {
                let i = rng.gen_range(0..q.len());
                q[i] += 1;
            }
            quanta.insert(
                menu.bits(),
                subsets
                    .iter()
                    .zip(&q)
                    .filter(|(_, &n)| n > 0)
                    .map(|(t, &n)| (t.bits(), n))
                    .collect(),
            );
        }

        let table = quanta
            .into_iter()
            .map(|(menu_bits, subs)| {
                (
                    menu_bits,
                    subs.into_iter()
                        .map(|(bits, n)| (bits, f64::from(n) / f64::from(g)))
                        .collect(),
                )
            })
            .collect();
        return Ok(AttentionRule {
            universe: universe.clone(),
            mode: EmptySetMode::Renormalize,
            table,
        });
    }

    Err(Error::Generation(format!(
        "no feasible monotone rule within {GENERATION_RETRY_BUDGET} attempts (seed {seed}, grid {grid_resolution})"
    )))
}
