//! Randomized measurement harness: Monte Carlo cross-checks of the exact
//! choice engine, counterexample search for the sequential-choice claims
//! over seeded random rules, and closed-form parameter sweeps.
//!
//! The searches *measure* the claims rather than assume them: every trial
//! produces a verdict, violations are counted and witnessed, and identical
//! configurations yield identical summaries regardless of thread count.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::arity::{general_n_dominance, ArityParams};
use crate::attention::{full_attention, random_monotone_rule, AttentionRule};
use crate::core::{
    enumerate_subsets, max_preferred, ChoiceDistribution, Menu, Subset, Universe, EPSILON,
};
use crate::ram::{choice_probability, pairwise_preservation_check};
use crate::sequential::{
    check_equivalence_conditions, compare_architectures, divergence_witness,
    sequential_distribution, ArchVerdict, Association, NoChoicePolicy, TournamentPlan,
};
use crate::{Error, Result};

/// Derives an independent 64-bit sub-seed from a base seed and a stream
/// index, so work items can be generated in any order (or concurrently)
/// without sharing generator state.
///
/// Scheme: the stream index is spread by the 64-bit golden-ratio constant,
/// XORed into the seed, and passed through the splitmix64 finalizer. Both
/// steps are fixed integer arithmetic, so the mapping is identical on every
/// platform; see the frozen values in this module's tests.
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut z = (seed ^ stream.wrapping_mul(GOLDEN)).wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// How to run a batch of independent work items. The result is identical
/// either way; the knob exists so benchmarks can compare the two paths.
/// Without the `parallel` feature, `Parallel` silently degrades to the
/// sequential path.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Runs `f` over `0..count`, sequentially or via the thread pool, always
/// returning results in index order.
fn map_indices<T, F>(count: u64, execution: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if execution == Execution::Parallel {
            return (0..count).into_par_iter().map(&f).collect();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = execution;
    (0..count).map(f).collect()
}

/// Samples per independently seeded chunk. Chunking makes the sample
/// stream a function of (seed, chunk index) alone, so sequential and
/// parallel execution produce bit-identical counts.
pub const MONTE_CARLO_CHUNK: u64 = 1 << 16;

/// Empirical counterpart of [`choice_probability`]: draws `samples`
/// consideration sets from the rule's distribution over the menu, resolves
/// each to its preferred element, and returns the observed frequencies.
/// Deterministic given the seed.
pub fn monte_carlo_choice(
    rule: &AttentionRule,
    menu: Menu,
    samples: u64,
    seed: u64,
) -> Result<ChoiceDistribution> {
    monte_carlo_choice_exec(rule, menu, samples, seed, Execution::default())
}

/// [`monte_carlo_choice`] with an explicit execution strategy.
pub fn monte_carlo_choice_exec(
    rule: &AttentionRule,
    menu: Menu,
    samples: u64,
    seed: u64,
    execution: Execution,
) -> Result<ChoiceDistribution> {
    if samples == 0 {
        return Err(Error::InvalidInput("sampling needs at least 1 draw".into()));
    }
    // Surfaces incompleteness and degeneracy through the exact engine
    // before any sampling starts.
    choice_probability(rule, menu)?;

    let universe = rule.universe();
    let members: Vec<usize> = menu.indices().collect();
    let no_choice_slot = members.len();

    // A menu's sampler: cumulative attention mass, and the slot each
    // consideration set resolves to (its preferred element, or no-choice
    // for the empty set).
    let mut slots: Vec<usize> = Vec::new();
    let mut cumulative: Vec<f64> = Vec::new();
    match rule.entries(menu) {
        Some(entries) => {
            let mut total = 0.0;
            for (subset, mass) in entries {
                total += mass;
                cumulative.push(total);
                slots.push(match max_preferred(universe, subset)? {
                    Some(winner) => members
                        .iter()
                        .position(|&m| m == winner)
                        .expect("winner is a menu member"),
                    None => no_choice_slot,
                });
            }
        }
        // A bare singleton menu is a forced pick; the exact engine accepted
        // it above, so every draw lands on the only member.
        None => {
            cumulative.push(1.0);
            slots.push(0);
        }
    }

    let chunks = samples.div_ceil(MONTE_CARLO_CHUNK);
    let counts = map_indices(chunks, execution, |chunk| {
        let start = chunk * MONTE_CARLO_CHUNK;
        let draws = MONTE_CARLO_CHUNK.min(samples - start);
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, chunk));
        let mut counts = vec![0u64; members.len() + 1];
        for _ in 0..draws {
            let u: f64 = rng.gen();
            // first cumulative value exceeding the draw; a draw past the
            // total (possible within the rule's 1e-9 mass slack) lands on
            // the last entry
            let pos = cumulative.partition_point(|&c| c <= u).min(slots.len() - 1);
            counts[slots[pos]] += 1;
        }
        Ok(counts)
    })?
    .into_iter()
    .fold(vec![0u64; members.len() + 1], |mut acc, chunk| {
        for (a, c) in acc.iter_mut().zip(chunk) {
            *a += c;
        }
        acc
    });

    let freq = |n: u64| n as f64 / samples as f64;
    ChoiceDistribution::new(
        menu,
        members
            .iter()
            .enumerate()
            .map(|(slot, &index)| (index, freq(counts[slot])))
            .collect(),
        freq(counts[no_choice_slot]),
    )
}

/// The sequential-choice claims the search can measure.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    /// The best-ordered binary tournament beats one-shot evaluation on the
    /// probability of picking the utility-best element of the full menu.
    Superiority,
    /// *Every* presentation order of *every* triple beats its one-shot
    /// evaluation.
    Amplification,
    /// A rule with incomplete attention somewhere has a menu and order on
    /// which the two architectures genuinely differ.
    Divergence,
    /// Both directions of the equivalence claim: architectures coincide
    /// everywhere exactly when every menu is considered in full.
    Equivalence,
    /// Binary menus never do worse by the better element than any larger
    /// menu containing the pair.
    PairwisePreservation,
}

impl Hypothesis {
    /// Smallest universe on which the claim says anything.
    pub fn min_universe(self) -> usize {
        match self {
            Hypothesis::Equivalence => 2,
            _ => 3,
        }
    }

    /// Names for the two quantities each trial reports.
    pub fn quantity_names(self) -> (&'static str, &'static str) {
        match self {
            Hypothesis::Superiority => ("Pr_SEQ(best order)", "Pr_SIM"),
            Hypothesis::Amplification => ("Pr_SEQ(worst triple)", "Pr_SIM(worst triple)"),
            Hypothesis::Divergence => ("max TV gap", "zero"),
            Hypothesis::Equivalence => ("premise (0/1)", "coincide (0/1)"),
            Hypothesis::PairwisePreservation => ("pi(best | pair)", "pi(best | superset)"),
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::Superiority => "superiority",
            Hypothesis::Amplification => "amplification",
            Hypothesis::Divergence => "divergence",
            Hypothesis::Equivalence => "equivalence",
            Hypothesis::PairwisePreservation => "pairwise-preservation",
        })
    }
}

impl FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "superiority" => Ok(Hypothesis::Superiority),
            "amplification" => Ok(Hypothesis::Amplification),
            "divergence" => Ok(Hypothesis::Divergence),
            "equivalence" => Ok(Hypothesis::Equivalence),
            "pairwise-preservation" => Ok(Hypothesis::PairwisePreservation),
            other => Err(Error::Config(format!(
                "unknown hypothesis {other:?}; expected superiority, amplification, \
                 divergence, equivalence, or pairwise-preservation"
            ))),
        }
    }
}

/// Which population of rules the trials draw from.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum RuleFamily {
    /// Seeded monotone rules on an integer probability grid.
    #[default]
    MonotoneGrid,
    /// The unique rule that always considers the whole menu (degenerate as
    /// a population, useful as a known-good baseline).
    FullAttention,
}

impl fmt::Display for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleFamily::MonotoneGrid => "monotone-grid",
            RuleFamily::FullAttention => "full-attention",
        })
    }
}

impl FromStr for RuleFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone-grid" => Ok(RuleFamily::MonotoneGrid),
            "full-attention" => Ok(RuleFamily::FullAttention),
            other => Err(Error::Config(format!(
                "unknown rule family {other:?}; expected monotone-grid or full-attention"
            ))),
        }
    }
}

/// Universes above this size make the exhaustive per-trial sub-checks
/// (order enumeration) factorially expensive.
pub const SEARCH_UNIVERSE_CAP: usize = 6;

/// At most this many violation witnesses are kept in a summary.
pub const MAX_WITNESSES: usize = 10;

/// A full description of one search run. Two equal configs produce
/// byte-identical summaries.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub hypothesis: Hypothesis,
    pub family: RuleFamily,
    pub trials: u64,
    pub seed: u64,
    pub universe_size: usize,
    pub grid_resolution: u32,
    /// Evaluated as trial 0 when present (its own universe, not the
    /// synthesized one); generated trials fill the rest.
    pub injected: Option<AttentionRule>,
}

impl SearchConfig {
    pub fn new(
        hypothesis: Hypothesis,
        trials: u64,
        seed: u64,
        universe_size: usize,
        grid_resolution: u32,
    ) -> Result<Self> {
        if trials < 1 {
            return Err(Error::Config("a search needs at least 1 trial".into()));
        }
        if universe_size < hypothesis.min_universe() || universe_size > SEARCH_UNIVERSE_CAP {
            return Err(Error::Config(format!(
                "universe size {universe_size} is outside {}..={SEARCH_UNIVERSE_CAP} for the \
                 {hypothesis} hypothesis",
                hypothesis.min_universe()
            )));
        }
        if grid_resolution < 2 {
            return Err(Error::Config(format!(
                "grid resolution {grid_resolution} must be at least 2"
            )));
        }
        Ok(Self {
            hypothesis,
            family: RuleFamily::default(),
            trials,
            seed,
            universe_size,
            grid_resolution,
            injected: None,
        })
    }

    pub fn with_family(mut self, family: RuleFamily) -> Self {
        self.family = family;
        self
    }

    pub fn with_injected(mut self, rule: AttentionRule) -> Self {
        self.injected = Some(rule);
        self
    }
}

/// The synthesized universe a search runs on: labels `A`, `B`, `C`, … with
/// strictly descending utilities, so index 0 is always the optimum. Only
/// the utility *ordering* matters to any claim under test, so fixing the
/// values loses no generality.
pub fn search_universe(size: usize) -> Result<Universe> {
    if !(2..=26).contains(&size) {
        return Err(Error::InvalidInput(format!(
            "synthesized universes support 2..=26 alternatives, got {size}"
        )));
    }
    Universe::new(
        (0..size)
            .map(|i| (((b'A' + i as u8) as char).to_string(), (size - i) as f64))
            .collect(),
    )
}

/// Per-trial outcome classes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TrialVerdict {
    /// The claim held on this rule.
    Confirmed,
    /// The compared quantities agree within tolerance.
    Tie,
    /// The claim failed on this rule; the trial carries a witness.
    Violated,
    /// The claim's premise does not apply to this rule.
    Vacuous,
    /// No rule could be generated for this sub-seed.
    GenerationFailed,
}

impl fmt::Display for TrialVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrialVerdict::Confirmed => "confirmed",
            TrialVerdict::Tie => "tie",
            TrialVerdict::Violated => "violated",
            TrialVerdict::Vacuous => "vacuous",
            TrialVerdict::GenerationFailed => "generation-failed",
        })
    }
}

/// One trial's record. Everything except `elapsed` is a pure function of
/// the config and trial index.
#[derive(Clone, Debug)]
pub struct TrialReport {
    pub trial: u64,
    /// Sub-seed the trial's rule was generated from.
    pub seed: u64,
    pub rule_summary: String,
    /// The two compared quantities; see [`Hypothesis::quantity_names`].
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: TrialVerdict,
    /// Human-readable account of the decisive comparison or witness.
    pub detail: String,
    pub elapsed: Duration,
}

/// Aggregated result of a search. Excludes wall-clock times so that equal
/// configurations compare equal byte for byte.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSummary {
    pub hypothesis: Hypothesis,
    pub family: RuleFamily,
    pub trials: u64,
    pub seed: u64,
    pub confirmed: u64,
    pub ties: u64,
    pub vacuous: u64,
    pub violations: u64,
    pub generation_failures: u64,
    /// Up to [`MAX_WITNESSES`] violation descriptions, in trial order.
    pub first_witnesses: Vec<String>,
}

impl fmt::Display for SearchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "hypothesis {} over {} trials (family {}, seed {})",
            self.hypothesis, self.trials, self.family, self.seed
        )?;
        writeln!(
            f,
            "  confirmed {} | ties {} | vacuous {} | violations {} | generation failures {}",
            self.confirmed, self.ties, self.vacuous, self.violations, self.generation_failures
        )?;
        for w in &self.first_witnesses {
            writeln!(f, "  witness: {w}")?;
        }
        Ok(())
    }
}

/// What one rule says about one hypothesis.
struct Evaluation {
    lhs: f64,
    rhs: f64,
    verdict: TrialVerdict,
    detail: String,
}

fn order_text(universe: &Universe, order: &[usize]) -> String {
    order.iter().map(|&i| universe.label(i)).join(" then ")
}

/// Best achievable tournament (any order, either association) versus the
/// one-shot menu, on the probability of the utility-best element.
fn evaluate_superiority(rule: &AttentionRule) -> Result<Evaluation> {
    let universe = rule.universe();
    let menu = universe.full_menu();
    let optimal = max_preferred(universe, menu.as_subset())?.expect("non-empty");
    let pr_sim = choice_probability(rule, menu)?.prob(optimal);

    let members: Vec<usize> = menu.indices().collect();
    let mut best: Option<(f64, String)> = None;
    for order in members.iter().copied().permutations(members.len()) {
        for association in [Association::LeftFold, Association::RightAssociative] {
            let plan =
                TournamentPlan::from_indices(order.clone(), association, NoChoicePolicy::Abort)?;
            let p = sequential_distribution(rule, &plan)?.distribution.prob(optimal);
            if best.as_ref().is_none_or(|&(b, _)| p > b) {
                best = Some((p, order_text(universe, &order)));
            }
        }
    }
    let (pr_seq, order) = best.expect("at least one order");

    let gap = pr_seq - pr_sim;
    let optimum = universe.label(optimal);
    let (verdict, detail) = if gap > EPSILON {
        (
            TrialVerdict::Confirmed,
            format!("order [{order}] gives Pr({optimum}) = {pr_seq} > one-shot {pr_sim}"),
        )
    } else if gap >= -EPSILON {
        (
            TrialVerdict::Tie,
            format!("best order [{order}] only matches the one-shot {pr_sim}"),
        )
    } else {
        (
            TrialVerdict::Violated,
            format!(
                "even the best order [{order}] reaches Pr({optimum}) = {pr_seq}, \
                 below the one-shot {pr_sim}"
            ),
        )
    };
    Ok(Evaluation {
        lhs: pr_seq,
        rhs: pr_sim,
        verdict,
        detail,
    })
}

/// Every presentation order of every triple, tournament versus one-shot;
/// the trial reports the least favorable one.
fn evaluate_amplification(rule: &AttentionRule) -> Result<Evaluation> {
    let universe = rule.universe();
    let n = universe.len();
    let mut worst: Option<(f64, f64, String)> = None;
    for (x, y, z) in (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .filter(|&(x, y, z)| x != y && y != z && x != z)
    {
        let order = vec![x, y, z];
        let menu = Menu::new(universe, Subset::from_indices(order.iter().copied()))?;
        let plan = TournamentPlan::from_indices(
            order.clone(),
            Association::RightAssociative,
            NoChoicePolicy::Abort,
        )?;
        let cmp = compare_architectures(rule, menu, &plan)?;
        if worst
            .as_ref()
            .is_none_or(|&(s, m, _)| cmp.pr_seq - cmp.pr_sim < s - m)
        {
            worst = Some((cmp.pr_seq, cmp.pr_sim, order_text(universe, &order)));
        }
    }
    let Some((pr_seq, pr_sim, order)) = worst else {
        return Ok(Evaluation {
            lhs: 0.0,
            rhs: 0.0,
            verdict: TrialVerdict::Vacuous,
            detail: "universe has no triple of distinct alternatives".into(),
        });
    };

    let gap = pr_seq - pr_sim;
    let (verdict, detail) = if gap > EPSILON {
        (
            TrialVerdict::Confirmed,
            format!("weakest triple [{order}] still gives {pr_seq} > one-shot {pr_sim}"),
        )
    } else if gap >= -EPSILON {
        (
            TrialVerdict::Tie,
            format!("triple [{order}] exactly matches its one-shot evaluation at {pr_sim}"),
        )
    } else {
        (
            TrialVerdict::Violated,
            format!("triple [{order}] gives {pr_seq}, below its one-shot {pr_sim}"),
        )
    };
    Ok(Evaluation {
        lhs: pr_seq,
        rhs: pr_sim,
        verdict,
        detail,
    })
}

/// For rules with incomplete attention somewhere: is there a menu (size 3+)
/// and presentation on which tournament and one-shot genuinely differ?
fn evaluate_divergence(rule: &AttentionRule) -> Result<Evaluation> {
    if rule.is_full_attention() {
        return Ok(Evaluation {
            lhs: 0.0,
            rhs: 0.0,
            verdict: TrialVerdict::Vacuous,
            detail: "rule attends fully everywhere; the incomplete-attention premise \
                     does not apply"
                .into(),
        });
    }
    let universe = rule.universe();
    let mut max_tv = 0.0f64;
    let mut first: Option<String> = None;
    for subset in enumerate_subsets(universe.full_menu(), false) {
        if subset.len() < 3 {
            continue;
        }
        let menu = Menu::new(universe, subset)?;
        let members: Vec<usize> = menu.indices().collect();
        for order in members.iter().copied().permutations(members.len()) {
            for association in [Association::LeftFold, Association::RightAssociative] {
                let plan = TournamentPlan::from_indices(
                    order.clone(),
                    association,
                    NoChoicePolicy::Abort,
                )?;
                let div = divergence_witness(rule, menu, &plan)?;
                max_tv = max_tv.max(div.tv);
                if first.is_none() {
                    if let Some((index, gap)) = div.witness {
                        first = Some(format!(
                            "menu {} presented [{}]: Pr({}) differs by {gap}",
                            universe.describe(subset),
                            order_text(universe, &order),
                            universe.label(index),
                        ));
                    }
                }
            }
        }
    }

    let (verdict, detail) = match first {
        Some(found) => (TrialVerdict::Confirmed, found),
        None => (
            TrialVerdict::Violated,
            "attention is incomplete somewhere, yet every menu, order, and association \
             yields the one-shot distribution"
                .into(),
        ),
    };
    Ok(Evaluation {
        lhs: max_tv,
        rhs: 0.0,
        verdict,
        detail,
    })
}

/// Both directions of the equivalence claim, measured exhaustively.
fn evaluate_equivalence(rule: &AttentionRule) -> Result<Evaluation> {
    let report = check_equivalence_conditions(rule)?;
    let premise = report.full_attention && report.deterministic_max;
    let coincide = report.equivalence_holds;
    let (verdict, detail) = match (premise, coincide) {
        (true, true) => (
            TrialVerdict::Confirmed,
            "full attention, and the architectures coincide on every menu and order".into(),
        ),
        (true, false) => (
            TrialVerdict::Violated,
            "full attention everywhere, yet some menu and order diverges from the \
             one-shot distribution"
                .into(),
        ),
        (false, true) => (
            TrialVerdict::Violated,
            "architectures coincide on every menu and order although some menu is not \
             fully attended (the only-if direction fails on this rule)"
                .into(),
        ),
        (false, false) => (
            TrialVerdict::Confirmed,
            "incomplete attention, and the architectures indeed diverge somewhere".into(),
        ),
    };
    Ok(Evaluation {
        lhs: f64::from(u8::from(premise)),
        rhs: f64::from(u8::from(coincide)),
        verdict,
        detail,
    })
}

/// Binary menus versus every stored superset, by the better element.
fn evaluate_pairwise_preservation(rule: &AttentionRule) -> Result<Evaluation> {
    let (checks, violations) = pairwise_preservation_check(rule)?;
    if checks == 0 {
        return Ok(Evaluation {
            lhs: 0.0,
            rhs: 0.0,
            verdict: TrialVerdict::Vacuous,
            detail: "no menu strictly contains a preference-ordered pair".into(),
        });
    }
    match violations.first() {
        None => Ok(Evaluation {
            lhs: 0.0,
            rhs: 0.0,
            verdict: TrialVerdict::Confirmed,
            detail: format!("all {checks} pair-versus-superset comparisons preserved"),
        }),
        Some(v) => Ok(Evaluation {
            lhs: v.prob_smaller,
            rhs: v.prob_larger,
            verdict: TrialVerdict::Violated,
            detail: format!(
                "{} ({} of {checks} comparisons failed)",
                v.describe(rule),
                violations.len()
            ),
        }),
    }
}

fn evaluate(hypothesis: Hypothesis, rule: &AttentionRule) -> Result<Evaluation> {
    match hypothesis {
        Hypothesis::Superiority => evaluate_superiority(rule),
        Hypothesis::Amplification => evaluate_amplification(rule),
        Hypothesis::Divergence => evaluate_divergence(rule),
        Hypothesis::Equivalence => evaluate_equivalence(rule),
        Hypothesis::PairwisePreservation => evaluate_pairwise_preservation(rule),
    }
}

fn summarize_rule(rule: &AttentionRule) -> String {
    let entries = rule.flat_entries().len();
    let menus = rule.menus().count();
    format!(
        "{} alternatives, {menus} menus, {entries} entries, full attention: {}",
        rule.universe().len(),
        rule.is_full_attention()
    )
}

fn run_trial(config: &SearchConfig, universe: &Universe, trial: u64) -> Result<TrialReport> {
    let start = Instant::now();
    let sub_seed = split_seed(config.seed, trial);
    let rule = if trial == 0 && config.injected.is_some() {
        Ok(config.injected.clone().expect("just checked"))
    } else {
        match config.family {
            RuleFamily::MonotoneGrid => {
                random_monotone_rule(universe, sub_seed, config.grid_resolution)
            }
            RuleFamily::FullAttention => Ok(full_attention(universe.clone())),
        }
    };
    let report = match rule {
        Err(Error::Generation(msg)) => TrialReport {
            trial,
            seed: sub_seed,
            rule_summary: "(none)".into(),
            lhs: 0.0,
            rhs: 0.0,
            verdict: TrialVerdict::GenerationFailed,
            detail: msg,
            elapsed: start.elapsed(),
        },
        Err(other) => return Err(other),
        Ok(rule) => {
            let eval = evaluate(config.hypothesis, &rule)?;
            TrialReport {
                trial,
                seed: sub_seed,
                rule_summary: summarize_rule(&rule),
                lhs: eval.lhs,
                rhs: eval.rhs,
                verdict: eval.verdict,
                detail: eval.detail,
                elapsed: start.elapsed(),
            }
        }
    };
    Ok(report)
}

/// Runs the configured search and returns every trial's report (in trial
/// order) together with the aggregate summary.
///
/// Trials are independent given their derived sub-seeds, so the execution
/// strategy cannot change any report. A run where more than half the
/// trials fail generation is treated as a configuration error.
pub fn hypothesis_search_reports(
    config: &SearchConfig,
    execution: Execution,
) -> Result<(Vec<TrialReport>, SearchSummary)> {
    // Re-validate so hand-rolled configs get the same guarantees as
    // constructor-built ones.
    SearchConfig::new(
        config.hypothesis,
        config.trials,
        config.seed,
        config.universe_size,
        config.grid_resolution,
    )?;
    let universe = search_universe(config.universe_size)?;
    let reports = map_indices(config.trials, execution, |trial| {
        run_trial(config, &universe, trial)
    })?;

    let mut summary = SearchSummary {
        hypothesis: config.hypothesis,
        family: config.family,
        trials: config.trials,
        seed: config.seed,
        confirmed: 0,
        ties: 0,
        vacuous: 0,
        violations: 0,
        generation_failures: 0,
        first_witnesses: Vec::new(),
    };
    for report in &reports {
        match report.verdict {
            TrialVerdict::Confirmed => summary.confirmed += 1,
            TrialVerdict::Tie => summary.ties += 1,
            TrialVerdict::Vacuous => summary.vacuous += 1,
            TrialVerdict::GenerationFailed => summary.generation_failures += 1,
            TrialVerdict::Violated => {
                summary.violations += 1;
                if summary.first_witnesses.len() < MAX_WITNESSES {
                    summary
                        .first_witnesses
                        .push(format!("trial {}: {}", report.trial, report.detail));
                }
            }
        }
    }
    if summary.generation_failures * 2 > config.trials {
        return Err(Error::Generation(format!(
            "{} of {} trials failed rule generation; raise the grid resolution",
            summary.generation_failures, config.trials
        )));
    }
    Ok((reports, summary))
}

/// [`hypothesis_search_reports`] keeping only the summary, under the
/// default execution strategy.
pub fn hypothesis_search(config: &SearchConfig) -> Result<SearchSummary> {
    Ok(hypothesis_search_reports(config, Execution::default())?.1)
}

/// How the binary-stage accuracy relates to the n-ary accuracy in a sweep.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum UpliftModel {
    /// Same accuracy at every arity (the no-advantage baseline).
    Homogeneous,
    /// Binary accuracy pinned to the exact break-even point
    /// `p^(n / (2(n-1)))`, so the comparison ties by construction.
    Threshold,
    /// Additive binary advantage, `min(p + delta, 1)`.
    Delta(f64),
}

impl UpliftModel {
    /// The binary accuracy this model assigns, given the n-ary accuracy.
    pub fn binary_accuracy(self, p: f64, n: u32) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "accuracy p = {p} is outside (0, 1]"
            )));
        }
        match self {
            UpliftModel::Homogeneous => Ok(p),
            UpliftModel::Threshold => Ok(p.powf(threshold_exponent(n))),
            UpliftModel::Delta(delta) => {
                let p2 = (p + delta).min(1.0);
                if p2 <= 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "delta {delta} drives the binary accuracy of p = {p} to {p2}"
                    )));
                }
                Ok(p2)
            }
        }
    }
}

impl fmt::Display for UpliftModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpliftModel::Homogeneous => f.write_str("homogeneous"),
            UpliftModel::Threshold => f.write_str("threshold"),
            UpliftModel::Delta(d) => write!(f, "delta:{d}"),
        }
    }
}

impl FromStr for UpliftModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homogeneous" => Ok(UpliftModel::Homogeneous),
            "threshold" => Ok(UpliftModel::Threshold),
            other => match other.strip_prefix("delta:") {
                Some(d) => Ok(UpliftModel::Delta(d.parse::<f64>().map_err(|e| {
                    Error::Config(format!("bad delta in uplift {other:?}: {e}"))
                })?)),
                None => Err(Error::Config(format!(
                    "unknown uplift model {other:?}; expected homogeneous, threshold, \
                     or delta:<value>"
                ))),
            },
        }
    }
}

/// `p2 >= p^(n / (2(n-1)))` is exactly where an (n-1)-stage binary
/// tournament at per-stage success `p2^2` catches one n-ary stage at
/// success `p^n`.
fn threshold_exponent(n: u32) -> f64 {
    f64::from(n) / (2.0 * (f64::from(n) - 1.0))
}

/// One cell of an arity sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: u32,
    /// n-ary per-item attention accuracy.
    pub p: f64,
    /// Binary accuracy implied by the uplift model.
    pub p2: f64,
    pub uplift: UpliftModel,
    /// One-shot success probability, `p^n`.
    pub sim: f64,
    /// Tournament success probability, `p2^(2(n-1))`.
    pub seq: f64,
    /// Break-even binary accuracy for this `p` and `n`.
    pub threshold: f64,
    pub verdict: ArchVerdict,
}

/// Tabulates tournament-versus-one-shot success over an accuracy grid and
/// a set of arities, under each uplift model. The homogeneous baseline is
/// always included (it is the row establishing that *without* a binary
/// advantage the tournament always loses: `p^(2(n-1)) < p^n` for p < 1).
pub fn arity_sweep(
    p_grid: &[f64],
    n_list: &[u32],
    uplifts: &[UpliftModel],
) -> Result<Vec<SweepRow>> {
    if p_grid.is_empty() || n_list.is_empty() {
        return Err(Error::InvalidInput(
            "the sweep needs a non-empty accuracy grid and arity list".into(),
        ));
    }
    let mut models = vec![UpliftModel::Homogeneous];
    for &u in uplifts {
        if !models.contains(&u) {
            models.push(u);
        }
    }

    let mut rows = Vec::with_capacity(n_list.len() * p_grid.len() * models.len());
    for &n in n_list {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "sweep arities start at 3 (a 2-ary one-shot *is* the binary stage), got {n}"
            )));
        }
        for &p in p_grid {
            for &uplift in &models {
                let p2 = uplift.binary_accuracy(p, n)?;
                let params = ArityParams::new(&[(2, p2), (n, p)], &[(2, 1.0), (n, 1.0)])?;
                let dom = general_n_dominance(&params, n)?;
                let verdict = if dom.tie {
                    ArchVerdict::Tie
                } else if dom.seq > dom.sim {
                    ArchVerdict::SeqDominant
                } else {
                    ArchVerdict::SimDominant
                };
                rows.push(SweepRow {
                    n,
                    p,
                    p2,
                    uplift,
                    sim: dom.sim,
                    seq: dom.seq,
                    threshold: p.powf(threshold_exponent(n)),
                    verdict,
                });
            }
        }
    }
    Ok(rows)
}

/// Worst-case accuracies a concrete rule actually delivers, bridging it to
/// the closed-form arity model: `q` is the weakest binary menu (by the
/// better element), `r` the weakest ternary menu (by its optimum). This
/// bridge is a measurement convention of this artifact, not a mapping the
/// theory supplies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveAccuracy {
    pub q: f64,
    pub r: f64,
}

pub fn effective_accuracy(rule: &AttentionRule) -> Result<EffectiveAccuracy> {
    let universe = rule.universe();
    if universe.len() < 3 {
        return Err(Error::InvalidInput(
            "effective accuracy needs binary and ternary menus, so at least 3 alternatives"
                .into(),
        ));
    }
    let mut q = f64::INFINITY;
    let mut r = f64::INFINITY;
    for subset in enumerate_subsets(universe.full_menu(), false) {
        let menu = Menu::new(universe, subset)?;
        match subset.len() {
            2 => {
                let best = max_preferred(universe, subset)?.expect("non-empty");
                q = q.min(choice_probability(rule, menu)?.prob(best));
            }
            3 => {
                let best = max_preferred(universe, subset)?.expect("non-empty");
                r = r.min(choice_probability(rule, menu)?.prob(best));
            }
            _ => {}
        }
    }
    Ok(EffectiveAccuracy { q, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arity::superiority_qr;
    use crate::attention::{independent_attention, EmptySetMode};
    use crate::testutil::{beverages_rule, beverages_universe, preservation_violating_rule};

    #[test]
    fn split_seed_is_frozen_and_disperses() {
        // frozen reference values pin the splitting scheme itself
        assert_eq!(split_seed(42, 7), 14680896716286437513);
        assert_eq!(split_seed(42, 0), 13679457532755275413);
        assert_eq!(split_seed(0, 0), 16294208416658607535);
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..50 {
            for stream in 0..50 {
                seen.insert(split_seed(seed, stream));
            }
        }
        assert_eq!(seen.len(), 2500);
    }

    #[test]
    fn monte_carlo_tracks_the_exact_engine_within_binomial_bands() {
        let rule = beverages_rule();
        let u = rule.universe().clone();
        let menu = u.full_menu();
        let samples = 1_000_000u64;
        let emp = monte_carlo_choice(&rule, menu, samples, 91).unwrap();
        let exact = choice_probability(&rule, menu).unwrap();
        for (index, p) in [("A", 0.6), ("D", 0.4)].map(|(l, p)| (u.index_of(l).unwrap(), p)) {
            let sigma = (p * (1.0 - p) / samples as f64).sqrt();
            assert!(
                (emp.prob(index) - p).abs() <= 3.0 * sigma,
                "empirical {} vs exact {p}",
                emp.prob(index)
            );
        }
        // nothing in the rule ever resolves to the worst alternative
        assert_eq!(emp.prob(u.index_of("B").unwrap()), 0.0);
        assert_eq!(emp.no_choice(), 0.0);
        assert!(emp.total_variation(&exact).unwrap() <= 0.005);
    }

    #[test]
    fn monte_carlo_is_deterministic_and_execution_independent() {
        let rule = beverages_rule();
        let menu = rule.universe().full_menu();
        let a = monte_carlo_choice_exec(&rule, menu, 200_000, 5, Execution::Sequential).unwrap();
        let b = monte_carlo_choice_exec(&rule, menu, 200_000, 5, Execution::Parallel).unwrap();
        let c = monte_carlo_choice_exec(&rule, menu, 200_000, 5, Execution::Parallel).unwrap();
        for (x, y) in [(&a, &b), (&b, &c)] {
            assert_eq!(x.entries(), y.entries());
            assert_eq!(x.no_choice(), y.no_choice());
        }
        // different seeds genuinely reshuffle
        let d = monte_carlo_choice(&rule, menu, 200_000, 6).unwrap();
        assert_ne!(a.entries(), d.entries());
    }

    #[test]
    fn monte_carlo_full_attention_is_deterministic_choice() {
        let u = beverages_universe();
        let rule = full_attention(u.clone());
        let menu = u.full_menu();
        let emp = monte_carlo_choice(&rule, menu, 10_000, 3).unwrap();
        assert_eq!(emp.prob(u.index_of("A").unwrap()), 1.0);
        assert_eq!(emp.prob(u.index_of("B").unwrap()), 0.0);
    }

    #[test]
    fn monte_carlo_error_shrinks_with_more_samples() {
        let rule = beverages_rule();
        let menu = rule.universe().full_menu();
        let exact = choice_probability(&rule, menu).unwrap();
        let coarse = monte_carlo_choice(&rule, menu, 1_000, 17).unwrap();
        let fine = monte_carlo_choice(&rule, menu, 1_000_000, 17).unwrap();
        let tv_coarse = coarse.total_variation(&exact).unwrap();
        let tv_fine = fine.total_variation(&exact).unwrap();
        assert!(
            tv_fine < tv_coarse,
            "1e6 samples ({tv_fine}) should beat 1e3 ({tv_coarse})"
        );
    }

    #[test]
    fn monte_carlo_agrees_with_exact_on_random_rules() {
        for size in [3usize, 4] {
            let u = search_universe(size).unwrap();
            for seed in [11u64, 12, 13] {
                let rule = random_monotone_rule(&u, seed, 10).unwrap();
                let menu = u.full_menu();
                let emp = monte_carlo_choice(&rule, menu, 1_000_000, seed ^ 0xFF).unwrap();
                let exact = choice_probability(&rule, menu).unwrap();
                let tv = emp.total_variation(&exact).unwrap();
                assert!(tv <= 0.005, "size {size} seed {seed}: TV {tv}");
            }
        }
    }

    #[test]
    fn monte_carlo_surfaces_no_choice_and_forced_menus() {
        let u = beverages_universe();
        let rule = independent_attention(u.clone(), 0.5, EmptySetMode::NoChoice).unwrap();
        let pair = Menu::from_labels(&u, &["A", "B"]).unwrap();
        let emp = monte_carlo_choice(&rule, pair, 400_000, 23).unwrap();
        // true no-choice mass is (1-p)^2 = 0.25
        assert!((emp.no_choice() - 0.25).abs() < 0.005);

        // a stored singleton follows its stored entries ...
        let solo = Menu::from_labels(&u, &["D"]).unwrap();
        let emp = monte_carlo_choice(&rule, solo, 400_000, 23).unwrap();
        assert!((emp.prob(u.index_of("D").unwrap()) - 0.5).abs() < 0.005);
        // ... while an absent one is a forced pick on every draw
        let bare = beverages_rule();
        let emp = monte_carlo_choice(&bare, solo, 100, 23).unwrap();
        assert_eq!(emp.prob(u.index_of("D").unwrap()), 1.0);
    }

    #[test]
    fn monte_carlo_rejects_bad_requests() {
        let rule = beverages_rule();
        let menu = rule.universe().full_menu();
        assert!(matches!(
            monte_carlo_choice(&rule, menu, 0, 1),
            Err(Error::InvalidInput(_))
        ));
        let sparse = crate::attention::load_explicit(
            beverages_universe(),
            EmptySetMode::Renormalize,
            &[(menu, menu.as_subset(), 1.0)],
        )
        .unwrap();
        let pair = Menu::from_labels(sparse.universe(), &["A", "B"]).unwrap();
        assert!(matches!(
            monte_carlo_choice(&sparse, pair, 10, 1),
            Err(Error::IncompleteRule(_))
        ));
    }

    #[test]
    fn full_attention_family_confirms_equivalence_trivially() {
        let config = SearchConfig::new(Hypothesis::Equivalence, 5, 77, 3, 8)
            .unwrap()
            .with_family(RuleFamily::FullAttention);
        let summary = hypothesis_search(&config).unwrap();
        assert_eq!(summary.violations, 0);
        assert_eq!(summary.confirmed, 5);
        assert!(summary.first_witnesses.is_empty());
    }

    #[test]
    fn injected_rule_is_trial_zero_and_superiority_sees_the_worked_numbers() {
        let config = SearchConfig::new(Hypothesis::Superiority, 3, 40, 3, 8)
            .unwrap()
            .with_injected(beverages_rule());
        let (reports, summary) =
            hypothesis_search_reports(&config, Execution::Sequential).unwrap();
        assert_eq!(reports.len(), 3);
        let first = &reports[0];
        assert_eq!(first.trial, 0);
        assert_eq!(first.verdict, TrialVerdict::Confirmed);
        // best order saves the pair stage for last: 0.9 * (0.8 + 0.2) = 0.9
        assert!((first.lhs - 0.9).abs() < 1e-12);
        assert!((first.rhs - 0.6).abs() < 1e-12);
        assert_eq!(summary.trials, 3);
    }

    #[test]
    fn amplification_on_the_worked_rule_bottoms_out_at_the_presented_order() {
        let config = SearchConfig::new(Hypothesis::Amplification, 1, 40, 3, 8)
            .unwrap()
            .with_injected(beverages_rule());
        let (reports, _) = hypothesis_search_reports(&config, Execution::Sequential).unwrap();
        let r = &reports[0];
        assert_eq!(r.verdict, TrialVerdict::Confirmed);
        // weakest of the six presentations still runs two 0.9 stages
        assert!((r.lhs - 0.81).abs() < 1e-12);
        assert!((r.rhs - 0.6).abs() < 1e-12);
    }

    #[test]
    fn divergence_finds_the_worked_rule_gap_and_skips_full_attention() {
        let config = SearchConfig::new(Hypothesis::Divergence, 1, 40, 3, 8)
            .unwrap()
            .with_injected(beverages_rule());
        let (reports, _) = hypothesis_search_reports(&config, Execution::Sequential).unwrap();
        assert_eq!(reports[0].verdict, TrialVerdict::Confirmed);
        // the presented order alone already diverges by TV 0.23
        assert!(reports[0].lhs >= 0.23 - 1e-12);

        let config = SearchConfig::new(Hypothesis::Divergence, 4, 40, 3, 8)
            .unwrap()
            .with_family(RuleFamily::FullAttention);
        let summary = hypothesis_search(&config).unwrap();
        assert_eq!(summary.vacuous, 4);
        assert_eq!(summary.violations, 0);
    }

    #[test]
    fn pairwise_preservation_flags_the_constructed_counterexample() {
        let config = SearchConfig::new(Hypothesis::PairwisePreservation, 2, 40, 3, 8)
            .unwrap()
            .with_injected(preservation_violating_rule());
        let (reports, summary) =
            hypothesis_search_reports(&config, Execution::Sequential).unwrap();
        let r = &reports[0];
        assert_eq!(r.verdict, TrialVerdict::Violated);
        assert!((r.lhs - 0.5).abs() < 1e-12, "pair prob {}", r.lhs);
        assert!((r.rhs - 0.6).abs() < 1e-12, "superset prob {}", r.rhs);
        assert!(summary.violations >= 1);
        assert!(summary.first_witnesses[0].starts_with("trial 0:"));
    }

    #[test]
    fn searches_are_reproducible_and_execution_independent() {
        for hypothesis in [
            Hypothesis::Superiority,
            Hypothesis::Amplification,
            Hypothesis::Divergence,
            Hypothesis::Equivalence,
            Hypothesis::PairwisePreservation,
        ] {
            let config = SearchConfig::new(hypothesis, 40, 2024, 3, 6).unwrap();
            let s1 = hypothesis_search_reports(&config, Execution::Sequential)
                .unwrap()
                .1;
            let s2 = hypothesis_search_reports(&config, Execution::Sequential)
                .unwrap()
                .1;
            let p1 = hypothesis_search_reports(&config, Execution::Parallel)
                .unwrap()
                .1;
            assert_eq!(s1, s2, "{hypothesis}");
            assert_eq!(s1, p1, "{hypothesis}");
            assert_eq!(s1.to_string(), p1.to_string(), "{hypothesis}");
            let counted = s1.confirmed + s1.ties + s1.vacuous + s1.violations
                + s1.generation_failures;
            assert_eq!(counted, 40, "{hypothesis}");
        }
    }

    #[test]
    fn full_attention_implies_coincidence_on_every_sampled_rule() {
        // The forward direction of the equivalence claim is exact for this
        // model; whatever the converse does, premise == true must force
        // coincidence on every trial.
        let config = SearchConfig::new(Hypothesis::Equivalence, 60, 9, 3, 5).unwrap();
        let (reports, _) = hypothesis_search_reports(&config, Execution::Parallel).unwrap();
        for r in &reports {
            if r.lhs == 1.0 {
                assert_eq!(r.rhs, 1.0, "trial {}: {}", r.trial, r.detail);
            }
        }
    }

    #[test]
    fn config_validation_rejects_nonsense() {
        assert!(matches!(
            SearchConfig::new(Hypothesis::Superiority, 0, 1, 3, 8),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            SearchConfig::new(Hypothesis::Amplification, 1, 1, 2, 8),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            SearchConfig::new(Hypothesis::Superiority, 1, 1, 7, 8),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            SearchConfig::new(Hypothesis::Superiority, 1, 1, 3, 1),
            Err(Error::Config(_))
        ));
        // equivalence is meaningful already on pairs
        assert!(SearchConfig::new(Hypothesis::Equivalence, 1, 1, 2, 8).is_ok());
    }

    #[test]
    fn search_universe_is_labelled_and_ranked() {
        let u = search_universe(3).unwrap();
        assert_eq!((u.label(0), u.label(1), u.label(2)), ("A", "B", "C"));
        assert!(u.utility(0) > u.utility(1) && u.utility(1) > u.utility(2));
        assert!(search_universe(1).is_err());
        assert!(search_universe(27).is_err());
    }

    #[test]
    fn names_round_trip_through_strings() {
        for h in [
            Hypothesis::Superiority,
            Hypothesis::Amplification,
            Hypothesis::Divergence,
            Hypothesis::Equivalence,
            Hypothesis::PairwisePreservation,
        ] {
            assert_eq!(h.to_string().parse::<Hypothesis>().unwrap(), h);
        }
        for f in [RuleFamily::MonotoneGrid, RuleFamily::FullAttention] {
            assert_eq!(f.to_string().parse::<RuleFamily>().unwrap(), f);
        }
        for u in [
            UpliftModel::Homogeneous,
            UpliftModel::Threshold,
            UpliftModel::Delta(0.07),
        ] {
            assert_eq!(u.to_string().parse::<UpliftModel>().unwrap(), u);
        }
        assert!("tournament".parse::<Hypothesis>().is_err());
        assert!("delta:x".parse::<UpliftModel>().is_err());
    }

    #[test]
    fn sweep_reproduces_the_reference_cells() {
        let rows = arity_sweep(
            &[0.7, 0.9, 1.0],
            &[3],
            &[UpliftModel::Delta(0.07), UpliftModel::Threshold],
        )
        .unwrap();
        assert_eq!(rows.len(), 9);

        let cell = |p: f64, uplift: UpliftModel| {
            rows.iter()
                .find(|r| r.p == p && r.uplift == uplift)
                .unwrap()
        };
        // homogeneous accuracy always loses a stage to the extra exponent
        let h = cell(0.9, UpliftModel::Homogeneous);
        assert!((h.sim - 0.729).abs() < 1e-12);
        assert!((h.seq - 0.6561).abs() < 1e-12);
        assert_eq!(h.verdict, ArchVerdict::SimDominant);

        // a 7-point binary advantage flips the p = 0.7 cell
        let d = cell(0.7, UpliftModel::Delta(0.07));
        assert!((d.p2 - 0.77).abs() < 1e-12);
        assert!((d.seq - 0.35153041).abs() < 1e-12);
        assert!((d.sim - 0.343).abs() < 1e-12);
        assert_eq!(d.verdict, ArchVerdict::SeqDominant);
        assert!((d.threshold - 0.7652855797503654).abs() < 1e-12);

        // pinning the binary accuracy at the break-even point ties, and
        // perfect accuracy ties trivially
        for p in [0.7, 0.9, 1.0] {
            assert_eq!(cell(p, UpliftModel::Threshold).verdict, ArchVerdict::Tie);
        }
        let one = cell(1.0, UpliftModel::Homogeneous);
        assert_eq!((one.sim, one.seq), (1.0, 1.0));
        assert_eq!(one.verdict, ArchVerdict::Tie);
    }

    #[test]
    fn sweep_rejects_bad_grids_and_deduplicates_models() {
        assert!(arity_sweep(&[], &[3], &[]).is_err());
        assert!(arity_sweep(&[0.5], &[], &[]).is_err());
        assert!(arity_sweep(&[0.5], &[2], &[]).is_err());
        assert!(arity_sweep(&[0.0], &[3], &[]).is_err());
        let rows = arity_sweep(&[0.5], &[3], &[UpliftModel::Homogeneous]).unwrap();
        assert_eq!(rows.len(), 1);
        // arities beyond 3 use the generalized exponent
        let rows = arity_sweep(&[0.9], &[4], &[]).unwrap();
        assert!((rows[0].sim - 0.9f64.powi(4)).abs() < 1e-15);
        assert!((rows[0].seq - 0.9f64.powi(6)).abs() < 1e-15);
        assert!((rows[0].threshold - 0.9f64.powf(4.0 / 6.0)).abs() < 1e-15);
    }

    #[test]
    fn effective_accuracy_bridges_rules_to_the_closed_form() {
        let acc = effective_accuracy(&beverages_rule()).unwrap();
        assert!((acc.q - 0.8).abs() < 1e-12);
        assert!((acc.r - 0.6).abs() < 1e-12);
        // the bridge feeds the q/r comparison: 0.8^2 = 0.64 > 0.6
        assert!(superiority_qr(acc.q, acc.r).unwrap().holds);

        let acc = effective_accuracy(&preservation_violating_rule()).unwrap();
        assert!((acc.q - 0.5).abs() < 1e-12);
        assert!((acc.r - 0.6).abs() < 1e-12);
        assert!(!superiority_qr(acc.q, acc.r).unwrap().holds);

        let pair = search_universe(2).unwrap();
        assert!(effective_accuracy(&full_attention(pair)).is_err());
    }
}
