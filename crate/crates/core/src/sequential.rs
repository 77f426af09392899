//! Sequential choice: a menu resolved as a chain of binary knockout stages,
//! each stage an independent attention draw over just two alternatives.
//!
//! Two recursion shapes are supported. *Left fold* (the default): the first
//! two alternatives meet, the winner meets the third, and so on. *Right
//! associative*: the first alternative meets the winner of the tournament
//! over the rest, which unrolls to stages running from the back of the
//! presentation order. Under partial attention a stage can end with neither
//! contestant chosen; the [`NoChoicePolicy`] decides whether that aborts
//! the tournament or hands the next entrant a bye.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::attention::AttentionRule;
use crate::core::{
    enumerate_subsets, max_preferred, ChoiceDistribution, Menu, Subset, Universe, EPSILON,
};
use crate::ram::choice_probability;
use crate::{Error, Result};

/// Exhaustive equivalence checking enumerates every presentation order of
/// every menu; factorial growth makes this the practical universe bound.
pub const EXHAUSTIVE_UNIVERSE_CAP: usize = 8;

/// How stages nest.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Association {
    /// `((x1 vs x2) vs x3) vs ...` — winner stays on.
    LeftFold,
    /// `x1 vs (x2 vs (x3 vs ...))` — stages resolve from the back.
    RightAssociative,
}

/// What happens when a binary stage chooses neither contestant.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NoChoicePolicy {
    /// The tournament ends with the overall no-choice outcome.
    Abort,
    /// The champion slot is left vacant and the next entrant is promoted
    /// without an attention draw; vacancy after the last stage is overall
    /// no-choice.
    Bye,
}

/// A fully specified tournament: who plays, in what order, nested how.
#[derive(Clone, Debug, PartialEq)]
pub struct TournamentPlan {
    order: Vec<usize>,
    association: Association,
    policy: NoChoicePolicy,
}

impl TournamentPlan {
    /// `order` must name at least two distinct alternatives of `universe`.
    pub fn new(
        universe: &Universe,
        order: &[impl AsRef<str>],
        association: Association,
        policy: NoChoicePolicy,
    ) -> Result<Self> {
        let mut indices = Vec::with_capacity(order.len());
        for label in order {
            let i = universe
                .index_of(label.as_ref())
                .ok_or_else(|| Error::UnknownAlternative(label.as_ref().to_string()))?;
            if indices.contains(&i) {
                return Err(Error::InvalidInput(format!(
                    "alternative {} appears twice in the presentation order",
                    label.as_ref()
                )));
            }
            indices.push(i);
        }
        Self::from_indices(indices, association, policy)
    }

    pub fn from_indices(
        order: Vec<usize>,
        association: Association,
        policy: NoChoicePolicy,
    ) -> Result<Self> {
        if order.len() < 2 {
            return Err(Error::InvalidInput(
                "a tournament needs at least two alternatives".into(),
            ));
        }
        Ok(Self {
            order,
            association,
            policy,
        })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn association(&self) -> Association {
        self.association
    }

    pub fn policy(&self) -> NoChoicePolicy {
        self.policy
    }

    /// The set of contestants as a menu.
    pub fn menu(&self, universe: &Universe) -> Result<Menu> {
        Menu::new(universe, Subset::from_indices(self.order.iter().copied()))
    }
}

/// Snapshot after one binary stage.
#[derive(Clone, Debug, PartialEq)]
pub struct StageRecord {
    /// 1-based stage number in evaluation order (innermost first for the
    /// right-associative shape).
    pub stage: usize,
    /// The alternative that entered at this stage.
    pub entrant: usize,
    /// Champion distribution after the stage, ascending by index.
    pub champions: Vec<(usize, f64)>,
    /// Mass waiting to hand the next entrant a bye (bye policy only).
    pub vacant: f64,
    /// Terminal no-choice mass accumulated so far (abort policy only).
    pub aborted: f64,
}

/// Final distribution plus the per-stage trace.
#[derive(Clone, Debug)]
pub struct SequentialOutcome {
    pub distribution: ChoiceDistribution,
    pub stages: Vec<StageRecord>,
}

/// Champion distribution state threaded through the fold.
struct FoldState {
    champions: BTreeMap<usize, f64>,
    vacant: f64,
    aborted: f64,
}

/// One stage: `item` arrives and plays every current champion; vacant mass
/// promotes `item` without a draw.
fn merge_item(
    rule: &AttentionRule,
    state: FoldState,
    item: usize,
    policy: NoChoicePolicy,
) -> Result<FoldState> {
    let universe = rule.universe();
    let mut champions: BTreeMap<usize, f64> = BTreeMap::new();
    let mut vacant = 0.0;
    let mut aborted = state.aborted;
    for (&incumbent, &mass) in &state.champions {
        let pair = Menu::new(universe, Subset::from_indices([incumbent, item]))?;
        let dist = choice_probability(rule, pair)?;
        *champions.entry(incumbent).or_insert(0.0) += mass * dist.prob(incumbent);
        *champions.entry(item).or_insert(0.0) += mass * dist.prob(item);
        match policy {
            NoChoicePolicy::Abort => aborted += mass * dist.no_choice(),
            NoChoicePolicy::Bye => vacant += mass * dist.no_choice(),
        }
    }
    if state.vacant > 0.0 {
        *champions.entry(item).or_insert(0.0) += state.vacant;
    }
    Ok(FoldState {
        champions,
        vacant,
        aborted,
    })
}

/// Runs the tournament exactly (no sampling): the champion distribution is
/// propagated through each stage's binary choice probabilities, which is
/// valid because stage draws are independent.
pub fn sequential_distribution(
    rule: &AttentionRule,
    plan: &TournamentPlan,
) -> Result<SequentialOutcome> {
    let universe = rule.universe();
    let menu = plan.menu(universe)?;

    // Both shapes are folds of "merge one more item into the champion
    // distribution": left fold walks the order forward from the first
    // element; the right-associative shape starts from the last element and
    // merges backwards (the innermost pair resolves first).
    let (seed_item, arrivals): (usize, Vec<usize>) = match plan.association() {
        Association::LeftFold => (plan.order()[0], plan.order()[1..].to_vec()),
        Association::RightAssociative => (
            *plan.order().last().expect("non-empty"),
            plan.order()[..plan.order().len() - 1]
                .iter()
                .rev()
                .copied()
                .collect(),
        ),
    };

    let mut state = FoldState {
        champions: BTreeMap::from([(seed_item, 1.0)]),
        vacant: 0.0,
        aborted: 0.0,
    };
    let mut stages = Vec::with_capacity(arrivals.len());
    for (k, &item) in arrivals.iter().enumerate() {
        state = merge_item(rule, state, item, plan.policy())?;
        stages.push(StageRecord {
            stage: k + 1,
            entrant: item,
            champions: state.champions.iter().map(|(&i, &p)| (i, p)).collect(),
            vacant: state.vacant,
            aborted: state.aborted,
        });
    }

    let no_choice = state.aborted + state.vacant;
    let probs = menu
        .indices()
        .map(|i| (i, state.champions.get(&i).copied().unwrap_or(0.0)))
        .collect();
    Ok(SequentialOutcome {
        distribution: ChoiceDistribution::new(menu, probs, no_choice)?,
        stages,
    })
}

/// Which architecture served the decision maker better.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArchVerdict {
    SeqDominant,
    SimDominant,
    Tie,
}

impl std::fmt::Display for ArchVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ArchVerdict::SeqDominant => "SEQ-dominant",
            ArchVerdict::SimDominant => "SIM-dominant",
            ArchVerdict::Tie => "tie",
        })
    }
}

/// Head-to-head on the probability of choosing the utility-best element.
#[derive(Clone, Debug)]
pub struct ArchComparison {
    /// Index of the utility-maximal alternative of the menu.
    pub optimal: usize,
    pub pr_seq: f64,
    pub pr_sim: f64,
    /// `pr_seq - pr_sim`.
    pub difference: f64,
    pub verdict: ArchVerdict,
}

/// Evaluates both architectures on the same contestants. The plan must
/// cover exactly the menu's members.
pub fn compare_architectures(
    rule: &AttentionRule,
    menu: Menu,
    plan: &TournamentPlan,
) -> Result<ArchComparison> {
    let universe = rule.universe();
    if plan.menu(universe)? != menu {
        return Err(Error::InvalidInput(
            "tournament order must cover exactly the menu under comparison".into(),
        ));
    }
    let optimal = max_preferred(universe, menu.as_subset())?.expect("menu is non-empty");
    let pr_seq = sequential_distribution(rule, plan)?
        .distribution
        .prob(optimal);
    let pr_sim = choice_probability(rule, menu)?.prob(optimal);
    let difference = pr_seq - pr_sim;
    let verdict = if difference.abs() <= EPSILON {
        ArchVerdict::Tie
    } else if difference > 0.0 {
        ArchVerdict::SeqDominant
    } else {
        ArchVerdict::SimDominant
    };
    Ok(ArchComparison {
        optimal,
        pr_seq,
        pr_sim,
        difference,
        verdict,
    })
}

/// Where the two architectures disagree the most.
#[derive(Clone, Debug)]
pub struct Divergence {
    /// Total variation distance between the two distributions (no-choice
    /// counted as an outcome).
    pub tv: f64,
    /// Alternative with the largest absolute probability gap, with that
    /// gap; `None` when the distributions agree within [`EPSILON`].
    pub witness: Option<(usize, f64)>,
}

/// Total-variation gap between sequential and simultaneous evaluation of
/// the same contestants under the same rule.
pub fn divergence_witness(
    rule: &AttentionRule,
    menu: Menu,
    plan: &TournamentPlan,
) -> Result<Divergence> {
    if plan.menu(rule.universe())? != menu {
        return Err(Error::InvalidInput(
            "tournament order must cover exactly the menu under comparison".into(),
        ));
    }
    let seq = sequential_distribution(rule, plan)?.distribution;
    let sim = choice_probability(rule, menu)?;
    let tv = seq.total_variation(&sim)?;
    let witness = menu
        .indices()
        .map(|i| (i, (seq.prob(i) - sim.prob(i)).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .filter(|&(_, gap)| gap > EPSILON);
    Ok(Divergence { tv, witness })
}

/// The two premises of the equivalence result, plus the conclusion measured
/// exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// (i) every menu of size >= 2 is considered in full.
    pub full_attention: bool,
    /// (ii) conditional on full consideration, the utility-best element is
    /// what gets chosen (structural here: utilities are strictly ranked).
    pub deterministic_max: bool,
    /// Sequential and simultaneous distributions agree (within
    /// [`EPSILON`]) on every menu, every presentation order, and both
    /// association shapes.
    pub equivalence_holds: bool,
}

/// Exhaustively tests whether the two architectures coincide, menu by menu
/// and order by order. Requires a complete rule; universes above
/// [`EXHAUSTIVE_UNIVERSE_CAP`] are rejected (factorially many orders).
pub fn check_equivalence_conditions(rule: &AttentionRule) -> Result<EquivalenceReport> {
    let universe = rule.universe();
    if universe.len() > EXHAUSTIVE_UNIVERSE_CAP {
        return Err(Error::Capacity(format!(
            "exhaustive order enumeration is capped at {EXHAUSTIVE_UNIVERSE_CAP} alternatives, got {}",
            universe.len()
        )));
    }
    let full_attention = rule.is_full_attention();

    let mut deterministic_max = true;
    let mut equivalence_holds = true;
    for subset in enumerate_subsets(universe.full_menu(), false) {
        if subset.len() < 2 {
            continue;
        }
        let menu = Menu::new(universe, subset)?;
        let sim = choice_probability(rule, menu)?;
        let best = max_preferred(universe, subset)?.expect("non-empty");
        if sim.prob(best) + EPSILON < rule.mass(menu, menu.as_subset()) {
            deterministic_max = false;
        }
        let members: Vec<usize> = menu.indices().collect();
        for order in members.iter().copied().permutations(members.len()) {
            for association in [Association::LeftFold, Association::RightAssociative] {
                let plan =
                    TournamentPlan::from_indices(order.clone(), association, NoChoicePolicy::Abort)?;
                let seq = sequential_distribution(rule, &plan)?.distribution;
                let agree = menu
                    .indices()
                    .all(|i| (seq.prob(i) - sim.prob(i)).abs() <= EPSILON)
                    && (seq.no_choice() - sim.no_choice()).abs() <= EPSILON;
                if !agree {
                    equivalence_holds = false;
                }
            }
        }
    }

    Ok(EquivalenceReport {
        full_attention,
        deterministic_max,
        equivalence_holds,
    })
}
