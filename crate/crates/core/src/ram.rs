//! Simultaneous choice under random attention: one attention draw over the
//! menu, then utility-maximization on whatever was considered.
//!
//! The choice probability of `x` from menu `S` is the total attention mass
//! of the consideration sets whose best element is `x`. Summation is exact
//! over stored entries — no sampling here (the harness owns Monte Carlo).

use crate::attention::AttentionRule;
use crate::core::{max_preferred, ChoiceDistribution, Menu, Subset, EPSILON};
use crate::{Error, Result};

/// The exact choice distribution induced by `rule` on `menu`.
///
/// Mass on the empty consideration set (no-choice mode) surfaces as the
/// distribution's no-choice outcome. A singleton menu absent from the table
/// falls back to the forced choice; any larger uncovered menu is an
/// incompleteness error.
pub fn choice_probability(rule: &AttentionRule, menu: Menu) -> Result<ChoiceDistribution> {
    let universe = rule.universe();
    let mut probs: Vec<(usize, f64)> = menu.indices().map(|i| (i, 0.0)).collect();
    let mut no_choice = 0.0;

    match rule.entries(menu) {
        Some(entries) => {
            for (consideration, mass) in entries {
                match max_preferred(universe, consideration)? {
                    Some(winner) => {
                        let slot = probs
                            .iter_mut()
                            .find(|(i, _)| *i == winner)
                            .expect("winner is a menu member");
                        slot.1 += mass;
                    }
                    None => no_choice += mass,
                }
            }
        }
        None if menu.len() == 1 => {
            // derivable under non-degeneracy: the singleton must be considered
            probs[0].1 = 1.0;
        }
        None => {
            return Err(Error::IncompleteRule(
                universe.describe(menu.as_subset()),
            ))
        }
    }

    ChoiceDistribution::new(menu, probs, no_choice)
}

/// One regularity failure: `x` is chosen *more* often from the larger menu.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularityViolation {
    pub alternative: usize,
    pub smaller: Menu,
    pub larger: Menu,
    pub prob_smaller: f64,
    pub prob_larger: f64,
}

impl RegularityViolation {
    pub fn describe(&self, rule: &AttentionRule) -> String {
        let u = rule.universe();
        format!(
            "pi({} | {}) = {} < pi({} | {}) = {}",
            u.label(self.alternative),
            u.describe(self.smaller.as_subset()),
            self.prob_smaller,
            u.label(self.alternative),
            u.describe(self.larger.as_subset()),
            self.prob_larger,
        )
    }
}

/// Scans every nested pair of stored menus for regularity failures:
/// classical stochastic choice expects `pi(x | A) >= pi(x | B)` whenever
/// `A` is a submenu of `B` containing `x`; random attention can break this,
/// and each break is returned as a witness.
///
/// Returns `(comparisons_run, violations)`.
pub fn regularity_check(rule: &AttentionRule) -> Result<(u64, Vec<RegularityViolation>)> {
    let menus: Vec<Menu> = rule.menus().collect();
    let mut checks = 0u64;
    let mut violations = Vec::new();
    for &smaller in &menus {
        let dist_smaller = choice_probability(rule, smaller)?;
        for &larger in &menus {
            if smaller == larger || !smaller.as_subset().is_subset_of(larger.as_subset()) {
                continue;
            }
            let dist_larger = choice_probability(rule, larger)?;
            for x in smaller.indices() {
                checks += 1;
                let (ps, pl) = (dist_smaller.prob(x), dist_larger.prob(x));
                if ps < pl - EPSILON {
                    violations.push(RegularityViolation {
                        alternative: x,
                        smaller,
                        larger,
                        prob_smaller: ps,
                        prob_larger: pl,
                    });
                }
            }
        }
    }
    Ok((checks, violations))
}

/// Pairwise-preservation probe: for every preference-ordered pair `x > y`
/// and every stored menu `S` containing both, does the binary menu keep the
/// better alternative at least as probable, `pi(x | {x,y}) >= pi(x | S)`?
///
/// Returns `(checks_run, violations)`. This is a *measured* property, not
/// an assumed one — monotone rules exist that break it.
pub fn pairwise_preservation_check(
    rule: &AttentionRule,
) -> Result<(u64, Vec<RegularityViolation>)> {
    let universe = rule.universe();
    let mut checks = 0u64;
    let mut violations = Vec::new();
    for x in 0..universe.len() {
        for y in 0..universe.len() {
            if x == y || universe.utility(x) <= universe.utility(y) {
                continue;
            }
            let pair = Menu::new(universe, Subset::from_indices([x, y]))?;
            let pair_prob = choice_probability(rule, pair)?.prob(x);
            for menu in rule.menus() {
                if menu == pair || !pair.as_subset().is_subset_of(menu.as_subset()) {
                    continue;
                }
                checks += 1;
                let menu_prob = choice_probability(rule, menu)?.prob(x);
                if pair_prob < menu_prob - EPSILON {
                    violations.push(RegularityViolation {
                        alternative: x,
                        smaller: pair,
                        larger: menu,
                        prob_smaller: pair_prob,
                        prob_larger: menu_prob,
                    });
                }
            }
        }
    }
    Ok((checks, violations))
}
