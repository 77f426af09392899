//! Property-based invariants over seeded random rules: everything the
//! engines emit must be a probability distribution, generated rules must
//! validate, and the file format must round-trip bit-exactly.

use itertools::Itertools;
use proptest::prelude::*;

use seqram::attention::{random_monotone_rule, validate, AttentionRule};
use seqram::core::{enumerate_subsets, Menu, Universe};
use seqram::harness::search_universe;
use seqram::ram::choice_probability;
use seqram::rulefile::RuleFile;
use seqram::sequential::{
    sequential_distribution, Association, NoChoicePolicy, TournamentPlan,
};

const SLACK: f64 = 1e-9;

/// Generation retries can, in principle, exhaust their budget; such seeds
/// are skipped rather than failed.
fn generated(universe: &Universe, seed: u64, grid: u32) -> Option<AttentionRule> {
    match random_monotone_rule(universe, seed, grid) {
        Ok(rule) => Some(rule),
        Err(seqram::Error::Generation(_)) => None,
        Err(e) => panic!("unexpected generation error: {e}"),
    }
}

fn assert_distribution(
    menu: Menu,
    dist: &seqram::core::ChoiceDistribution,
) -> Result<(), TestCaseError> {
    let unit = -SLACK..=1.0 + SLACK;
    let mut total = dist.no_choice();
    prop_assert!(unit.contains(&dist.no_choice()));
    for i in menu.indices() {
        let p = dist.prob(i);
        prop_assert!(unit.contains(&p), "prob {p} out of range");
        total += p;
    }
    prop_assert!((total - 1.0).abs() <= SLACK, "mass totals {total}");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn generated_rules_validate_and_yield_distributions(
        seed in any::<u64>(),
        size in 2usize..=4,
        grid in 2u32..=10,
    ) {
        let universe = search_universe(size).unwrap();
        let Some(rule) = generated(&universe, seed, grid) else { return Ok(()) };
        prop_assert!(validate(&rule).all_good());
        for subset in enumerate_subsets(universe.full_menu(), false) {
            let menu = Menu::new(&universe, subset).unwrap();
            let dist = choice_probability(&rule, menu).unwrap();
            assert_distribution(menu, &dist)?;
        }
    }

    #[test]
    fn tournaments_yield_distributions_for_every_order_and_shape(
        seed in any::<u64>(),
        right in any::<bool>(),
        bye in any::<bool>(),
    ) {
        let universe = search_universe(3).unwrap();
        let Some(rule) = generated(&universe, seed, 8) else { return Ok(()) };
        let association = if right {
            Association::RightAssociative
        } else {
            Association::LeftFold
        };
        let policy = if bye { NoChoicePolicy::Bye } else { NoChoicePolicy::Abort };
        for order in (0..universe.len()).permutations(universe.len()) {
            let plan = TournamentPlan::from_indices(order, association, policy).unwrap();
            let outcome = sequential_distribution(&rule, &plan).unwrap();
            assert_distribution(plan.menu(&universe).unwrap(), &outcome.distribution)?;
            // stage champions carry full probability books too
            for stage in &outcome.stages {
                let carried: f64 = stage.champions.iter().map(|&(_, p)| p).sum();
                prop_assert!(carried + stage.vacant + stage.aborted <= 1.0 + SLACK);
            }
        }
    }

    #[test]
    fn rule_files_round_trip_bit_exactly(seed in any::<u64>(), size in 2usize..=4) {
        let universe = search_universe(size).unwrap();
        let Some(rule) = generated(&universe, seed, 9) else { return Ok(()) };
        let text = RuleFile::from_rule(&rule).to_json().unwrap();
        let reloaded = RuleFile::parse(&text).unwrap().to_rule().unwrap();
        let (before, after) = (rule.flat_entries(), reloaded.flat_entries());
        prop_assert_eq!(before.len(), after.len());
        for ((m1, s1, p1), (m2, s2, p2)) in before.into_iter().zip(after) {
            prop_assert_eq!((m1.bits(), s1.bits()), (m2.bits(), s2.bits()));
            prop_assert_eq!(p1.to_bits(), p2.to_bits());
        }
    }
}
