//! Command-line front end: rule-file ingestion and validation, exact
//! distribution queries, tournament evaluation and comparison, closed-form
//! sweeps, hypothesis searches, axiom checks, and a self-contained
//! reproduction of the repository's worked beverage example.
//!
//! Every command is a thin, deterministic rendering over the library
//! modules; all logic lives there. Exit codes: 0 on success, 1 when a
//! *checked property* fails (validation, axiom, or reproduction mismatch)
//! or the domain data cannot support the request, 2 for unusable input
//! (bad flags, unparseable or ill-formed files, unknown labels).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::attention::{validate, AttentionRule};
use crate::core::{max_preferred, Menu};
use crate::harness::{
    arity_sweep, hypothesis_search, Hypothesis, RuleFamily, SearchConfig, UpliftModel,
};
use crate::laws::{check_a1, check_a2, check_a3, check_a4, AxiomReport};
use crate::ram::choice_probability;
use crate::rulefile::RuleFile;
use crate::sequential::{
    compare_architectures, sequential_distribution, ArchVerdict, Association, NoChoicePolicy,
    TournamentPlan,
};
use crate::table::{fmt_sig, ResultTable};
use crate::{Error, Result};

/// Numeric agreement required of the reproduction command.
pub const REPRODUCTION_TOLERANCE: f64 = 1e-12;

/// The worked beverage example, embedded so reproduction needs no
/// filesystem input. The same document ships as a fixture file.
pub const EMBEDDED_EXAMPLE: &str = include_str!("../fixtures/beverages.json");

/// Rendering preferences shared by every command.
#[derive(Copy, Clone, Debug)]
pub struct Style {
    /// Significant digits for numeric cells (6 by default, 12 with
    /// `--exact`).
    pub sig: usize,
    /// Comma-separated instead of aligned tables.
    pub csv: bool,
}

impl Style {
    fn table(&self, t: &ResultTable) -> String {
        if self.csv {
            t.render_csv(self.sig)
        } else {
            t.render(self.sig)
        }
    }

    fn num(&self, v: f64) -> String {
        fmt_sig(v, self.sig)
    }
}

/// A command's rendered output plus its verdict; `ok = false` maps to
/// exit code 1.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn load_rule(path: &Path) -> Result<AttentionRule> {
    RuleFile::load(path)?.to_rule()
}

fn parse_association(s: &str) -> Result<Association> {
    match s {
        "left" => Ok(Association::LeftFold),
        "right" => Ok(Association::RightAssociative),
        other => Err(Error::Config(format!(
            "unknown association {other:?}; expected left or right"
        ))),
    }
}

fn parse_policy(s: &str) -> Result<NoChoicePolicy> {
    match s {
        "abort" => Ok(NoChoicePolicy::Abort),
        "bye" => Ok(NoChoicePolicy::Bye),
        other => Err(Error::Config(format!(
            "unknown no-choice policy {other:?}; expected abort or bye"
        ))),
    }
}

/// Structural health check of a rule file.
pub fn cmd_validate(file: &Path, _style: Style) -> Result<Outcome> {
    let rule = load_rule(file)?;
    let universe = rule.universe();
    let report = validate(&rule);

    let mut text = format!(
        "alternatives: {}, menus: {}, entries: {}\n",
        universe.len(),
        rule.menus().count(),
        rule.flat_entries().len()
    );
    if report.is_monotone() {
        text += &format!("monotonicity: ok ({} comparisons)\n", report.comparisons);
    } else {
        text += &format!(
            "monotonicity: {} violations ({} comparisons)\n",
            report.monotonicity_violations.len(),
            report.comparisons
        );
        for v in &report.monotonicity_violations {
            text += &format!("  {}\n", v.describe(universe));
        }
    }
    if report.is_non_degenerate() {
        text += "non-degeneracy: ok\n";
    } else {
        text += &format!("non-degeneracy: {} menus off\n", report.degenerate_menus.len());
        for (menu, total) in &report.degenerate_menus {
            text += &format!(
                "  {} carries total mass {total}\n",
                universe.describe(menu.as_subset())
            );
        }
    }
    if report.is_complete() {
        text += "completeness: ok\n";
    } else {
        text += &format!("completeness: {} menus missing\n", report.missing_menus.len());
        for menu in &report.missing_menus {
            text += &format!("  {}\n", universe.describe(menu.as_subset()));
        }
    }
    Ok(Outcome {
        text,
        ok: report.all_good(),
    })
}

fn distribution_table(
    rule: &AttentionRule,
    menu: Menu,
    dist: &crate::core::ChoiceDistribution,
) -> ResultTable {
    let universe = rule.universe();
    let mut t = ResultTable::new(vec!["alternative", "probability"]);
    for i in menu.indices() {
        t.push(vec![universe.label(i).into(), dist.prob(i).into()]);
    }
    t.push(vec!["(no choice)".into(), dist.no_choice().into()]);
    t
}

/// Exact choice probabilities of one menu.
pub fn cmd_ram(file: &Path, menu_labels: &[String], style: Style) -> Result<Outcome> {
    let rule = load_rule(file)?;
    let menu = Menu::from_labels(rule.universe(), menu_labels)?;
    let dist = choice_probability(&rule, menu)?;
    Ok(Outcome::ok(style.table(&distribution_table(
        &rule, menu, &dist,
    ))))
}

/// Tournament evaluation with the per-stage trace.
pub fn cmd_seq(
    file: &Path,
    order: &[String],
    association: Association,
    policy: NoChoicePolicy,
    style: Style,
) -> Result<Outcome> {
    let rule = load_rule(file)?;
    let universe = rule.universe();
    let plan = TournamentPlan::new(universe, order, association, policy)?;
    let outcome = sequential_distribution(&rule, &plan)?;

    let mut stage_table = ResultTable::new(vec![
        "stage", "entrant", "champions", "vacant", "aborted",
    ]);
    for s in &outcome.stages {
        let champions = s
            .champions
            .iter()
            .map(|&(i, p)| format!("{}={}", universe.label(i), style.num(p)))
            .collect::<Vec<_>>()
            .join(" ");
        stage_table.push(vec![
            (s.stage as u64).into(),
            universe.label(s.entrant).into(),
            champions.into(),
            s.vacant.into(),
            s.aborted.into(),
        ]);
    }

    let text = format!(
        "{}\n{}",
        style.table(&stage_table),
        style.table(&distribution_table(
            &rule,
            plan.menu(universe)?,
            &outcome.distribution
        ))
    );
    Ok(Outcome::ok(text))
}

/// Tournament versus one-shot evaluation of the same contestants. An
/// explicit menu must name exactly the order's members; omitted, it
/// defaults to them.
pub fn cmd_compare(
    file: &Path,
    order: &[String],
    menu_labels: Option<&[String]>,
    association: Association,
    policy: NoChoicePolicy,
    style: Style,
) -> Result<Outcome> {
    let rule = load_rule(file)?;
    let universe = rule.universe();
    let plan = TournamentPlan::new(universe, order, association, policy)?;
    let menu = match menu_labels {
        Some(labels) => Menu::from_labels(universe, labels)?,
        None => plan.menu(universe)?,
    };
    let cmp = compare_architectures(&rule, menu, &plan)?;

    let mut t = ResultTable::new(vec!["quantity", "value"]);
    t.push(vec![
        "optimal alternative".into(),
        universe.label(cmp.optimal).into(),
    ]);
    t.push(vec!["Pr_SEQ(optimal)".into(), cmp.pr_seq.into()]);
    t.push(vec!["Pr_SIM(optimal)".into(), cmp.pr_sim.into()]);
    t.push(vec!["difference".into(), cmp.difference.into()]);
    t.push(vec!["verdict".into(), cmp.verdict.to_string().into()]);
    Ok(Outcome::ok(style.table(&t)))
}

/// Closed-form sweep of tournament-versus-one-shot success.
pub fn cmd_sweep(
    p_grid: &[f64],
    n_list: &[u32],
    uplifts: &[UpliftModel],
    style: Style,
) -> Result<Outcome> {
    let rows = arity_sweep(p_grid, n_list, uplifts)?;
    let mut t = ResultTable::new(vec![
        "n", "p", "uplift", "p2", "threshold", "sim", "seq", "verdict",
    ]);
    for r in rows {
        t.push(vec![
            u64::from(r.n).into(),
            r.p.into(),
            r.uplift.to_string().into(),
            r.p2.into(),
            r.threshold.into(),
            r.sim.into(),
            r.seq.into(),
            r.verdict.to_string().into(),
        ]);
    }
    Ok(Outcome::ok(style.table(&t)))
}

/// Randomized hypothesis search; violations are findings, not failures.
#[allow(clippy::too_many_arguments)]
pub fn cmd_search(
    hypothesis: Hypothesis,
    trials: u64,
    seed: u64,
    universe_size: usize,
    grid_resolution: u32,
    family: RuleFamily,
    inject: Option<&Path>,
    style: Style,
) -> Result<Outcome> {
    let mut config = SearchConfig::new(hypothesis, trials, seed, universe_size, grid_resolution)?
        .with_family(family);
    if let Some(path) = inject {
        config = config.with_injected(load_rule(path)?);
    }
    let summary = hypothesis_search(&config)?;

    let mut t = ResultTable::new(vec!["measure", "value"]);
    let rows: Vec<(&str, String)> = vec![
        ("hypothesis", summary.hypothesis.to_string()),
        ("family", summary.family.to_string()),
        ("trials", summary.trials.to_string()),
        ("seed", summary.seed.to_string()),
        ("confirmed", summary.confirmed.to_string()),
        ("ties", summary.ties.to_string()),
        ("vacuous", summary.vacuous.to_string()),
        ("violations", summary.violations.to_string()),
        ("generation failures", summary.generation_failures.to_string()),
    ];
    for (k, v) in rows {
        t.push(vec![k.into(), v.into()]);
    }
    let mut text = style.table(&t);
    for w in &summary.first_witnesses {
        text += &format!("witness: {w}\n");
    }
    Ok(Outcome::ok(text))
}

/// The four behavioral-axiom checks; exits non-zero when any fails.
pub fn cmd_axioms(file: &Path, p_floor: f64, style: Style) -> Result<Outcome> {
    let rule = load_rule(file)?;
    let reports: Vec<AxiomReport> = vec![
        check_a1(&rule, p_floor)?,
        check_a2(&rule)?,
        check_a3(&rule),
        check_a4(&rule)?,
    ];

    let mut t = ResultTable::new(vec!["axiom", "status", "coverage", "witnesses"]);
    for r in &reports {
        t.push(vec![
            r.axiom.to_string().into(),
            if r.holds { "ok" } else { "FAILED" }.into(),
            r.coverage.into(),
            (r.witnesses.len() as u64).into(),
        ]);
    }
    let mut text = style.table(&t);
    for r in &reports {
        for w in &r.witnesses {
            text += &format!("{} witness: {w}\n", r.axiom);
        }
    }
    Ok(Outcome {
        text,
        ok: reports.iter().all(|r| r.holds),
    })
}

/// One quantity the reproduction must match.
struct Expectation {
    name: &'static str,
    expected: f64,
    computed: f64,
}

/// Recomputes the worked example's reference quantities from a rule and
/// compares them at [`REPRODUCTION_TOLERANCE`]. Split from
/// [`cmd_reproduce`] so tests can feed it a perturbed rule.
pub fn reproduce_report(rule: &AttentionRule, style: Style) -> Result<Outcome> {
    let universe = rule.universe();
    let index = |l: &str| {
        universe
            .index_of(l)
            .ok_or_else(|| Error::UnknownAlternative(l.to_string()))
    };
    let (a, b, d) = (index("A")?, index("B")?, index("D")?);
    let menu = |labels: &[&str]| Menu::from_labels(universe, labels);

    let full = choice_probability(rule, menu(&["A", "B", "D"])?)?;
    let ab = choice_probability(rule, menu(&["A", "B"])?)?;
    let ad = choice_probability(rule, menu(&["A", "D"])?)?;
    let plan = TournamentPlan::new(
        universe,
        &["A", "B", "D"],
        Association::LeftFold,
        NoChoicePolicy::Abort,
    )?;
    let cmp = compare_architectures(rule, menu(&["A", "B", "D"])?, &plan)?;

    let quantities = [
        Expectation { name: "pi(A | {A,B,D})", expected: 0.6, computed: full.prob(a) },
        Expectation { name: "pi(D | {A,B,D})", expected: 0.4, computed: full.prob(d) },
        Expectation { name: "pi(B | {A,B,D})", expected: 0.0, computed: full.prob(b) },
        Expectation { name: "pi(A | {A,B})", expected: 0.9, computed: ab.prob(a) },
        Expectation { name: "pi(A | {A,D})", expected: 0.9, computed: ad.prob(a) },
        Expectation { name: "pi(D | {A,D})", expected: 0.1, computed: ad.prob(d) },
        Expectation { name: "Pr(tournament = A)", expected: 0.81, computed: cmp.pr_seq },
        Expectation { name: "Pr_SEQ - Pr_SIM", expected: 0.21, computed: cmp.difference },
    ];

    let mut all_match = true;
    let mut t = ResultTable::new(vec!["quantity", "reference", "computed", "match"]);
    for q in &quantities {
        let matched = (q.computed - q.expected).abs() <= REPRODUCTION_TOLERANCE;
        all_match &= matched;
        t.push(vec![
            q.name.into(),
            q.expected.into(),
            q.computed.into(),
            if matched { "yes" } else { "NO" }.into(),
        ]);
    }
    let verdict_matched = cmp.verdict == ArchVerdict::SeqDominant;
    all_match &= verdict_matched;
    t.push(vec![
        "verdict".into(),
        ArchVerdict::SeqDominant.to_string().into(),
        cmp.verdict.to_string().into(),
        if verdict_matched { "yes" } else { "NO" }.into(),
    ]);

    let optimal = max_preferred(universe, menu(&["A", "B", "D"])?.as_subset())?
        .expect("non-empty menu");
    let mut text = style.table(&t);
    text += &format!(
        "{}: sequential pairing lifts Pr({}) from {} to {}\n",
        if all_match {
            "reproduction ok"
        } else {
            "reproduction FAILED"
        },
        universe.label(optimal),
        style.num(cmp.pr_sim),
        style.num(cmp.pr_seq),
    );
    Ok(Outcome {
        text,
        ok: all_match,
    })
}

/// Recomputes every reference number of the embedded worked example.
pub fn cmd_reproduce(style: Style) -> Result<Outcome> {
    let rule = RuleFile::parse(EMBEDDED_EXAMPLE)?.to_rule()?;
    reproduce_report(&rule, style)
}

/// Stochastic-choice toolkit for random-attention rules.
#[derive(Parser, Debug)]
#[command(name = "seqram", version, about)]
pub struct Cli {
    /// Print numbers with 12 significant digits instead of 6.
    #[arg(long, global = true)]
    pub exact: bool,

    /// Emit comma-separated tables instead of aligned text.
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a rule file for monotonicity, non-degeneracy, and completeness.
    Validate { file: PathBuf },

    /// Exact choice probabilities of one menu.
    Ram {
        file: PathBuf,
        /// Menu members, comma-separated (e.g. A,B,D).
        #[arg(long, value_delimiter = ',', required = true)]
        menu: Vec<String>,
    },

    /// Evaluate a sequential binary tournament, with the stage trace.
    Seq {
        file: PathBuf,
        /// Presentation order, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<String>,
        /// Nesting shape: left ((x1 vs x2) vs x3 ...) or right (x1 vs (x2 vs ...)).
        #[arg(long, default_value = "left")]
        assoc: String,
        /// What happens to no-choice stage mass: abort the episode, or hand
        /// the next entrant a bye.
        #[arg(long = "no-choice", default_value = "abort")]
        no_choice: String,
    },

    /// Compare the tournament against one-shot evaluation of the same menu.
    Compare {
        file: PathBuf,
        /// Presentation order, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<String>,
        /// Menu under comparison; defaults to the order's member set and
        /// must equal it when given.
        #[arg(long, value_delimiter = ',')]
        menu: Option<Vec<String>>,
        #[arg(long, default_value = "left")]
        assoc: String,
        #[arg(long = "no-choice", default_value = "abort")]
        no_choice: String,
    },

    /// Closed-form success sweep over accuracies, arities, and uplift models.
    Sweep {
        /// Accuracy grid, comma-separated values in (0, 1].
        #[arg(long = "p-grid", value_delimiter = ',', required = true)]
        p_grid: Vec<f64>,
        /// Arities to tabulate (each at least 3).
        #[arg(long, value_delimiter = ',', default_value = "3")]
        n: Vec<u32>,
        /// Extra uplift models: threshold or delta:<value> (the homogeneous
        /// baseline is always included).
        #[arg(long, value_delimiter = ',')]
        uplift: Vec<String>,
    },

    /// Randomized search for counterexamples to a sequential-choice claim.
    Search {
        /// superiority | amplification | divergence | equivalence |
        /// pairwise-preservation
        #[arg(long)]
        hypothesis: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Alternatives in the synthesized universe (2..=6).
        #[arg(long = "universe-size", default_value_t = 3)]
        universe_size: usize,
        /// Probability grid used by the rule generator.
        #[arg(long = "grid-resolution", default_value_t = 8)]
        grid_resolution: u32,
        /// monotone-grid | full-attention
        #[arg(long, default_value = "monotone-grid")]
        family: String,
        /// Rule file to evaluate as trial 0.
        #[arg(long)]
        inject: Option<PathBuf>,
    },

    /// Run the four behavioral-axiom checks on a rule file.
    Axioms {
        file: PathBuf,
        /// Binary-consistency floor in (0.5, 1].
        #[arg(long = "p-floor", default_value_t = 0.8)]
        p_floor: f64,
    },

    /// Recompute the embedded worked example and verify every number.
    Reproduce,
}

/// Dispatches a parsed invocation to its command function.
pub fn run(cli: Cli) -> Result<Outcome> {
    let style = Style {
        sig: if cli.exact { 12 } else { 6 },
        csv: cli.csv,
    };
    match cli.command {
        Command::Validate { file } => cmd_validate(&file, style),
        Command::Ram { file, menu } => cmd_ram(&file, &menu, style),
        Command::Seq {
            file,
            order,
            assoc,
            no_choice,
        } => cmd_seq(
            &file,
            &order,
            parse_association(&assoc)?,
            parse_policy(&no_choice)?,
            style,
        ),
        Command::Compare {
            file,
            order,
            menu,
            assoc,
            no_choice,
        } => cmd_compare(
            &file,
            &order,
            menu.as_deref(),
            parse_association(&assoc)?,
            parse_policy(&no_choice)?,
            style,
        ),
        Command::Sweep { p_grid, n, uplift } => {
            let uplifts = uplift
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<UpliftModel>>>()?;
            cmd_sweep(&p_grid, &n, &uplifts, style)
        }
        Command::Search {
            hypothesis,
            trials,
            seed,
            universe_size,
            grid_resolution,
            family,
            inject,
        } => cmd_search(
            hypothesis.parse()?,
            trials,
            seed,
            universe_size,
            grid_resolution,
            family.parse()?,
            inject.as_deref(),
            style,
        ),
        Command::Axioms { file, p_floor } => cmd_axioms(&file, p_floor, style),
        Command::Reproduce => cmd_reproduce(style),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attention::{load_explicit, EmptySetMode};
    use crate::core::Subset;
    use crate::testutil::beverages_universe;

    const PLAIN: Style = Style { sig: 6, csv: false };
    const EXACT: Style = Style { sig: 12, csv: false };

    fn fixture_path() -> PathBuf {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("beverages.json");
        std::fs::write(&path, EMBEDDED_EXAMPLE).unwrap();
        // keep the directory alive for the test process
        std::mem::forget(dir);
        path
    }

    #[test]
    fn embedded_example_matches_the_test_fixture_rule() {
        let from_doc = RuleFile::parse(EMBEDDED_EXAMPLE).unwrap().to_rule().unwrap();
        let reference = crate::testutil::beverages_rule();
        assert_eq!(from_doc.mode(), reference.mode());
        let (e1, e2) = (from_doc.flat_entries(), reference.flat_entries());
        assert_eq!(e1.len(), e2.len());
        for ((m1, s1, p1), (m2, s2, p2)) in e1.into_iter().zip(e2) {
            assert_eq!((m1.bits(), s1.bits()), (m2.bits(), s2.bits()));
            assert_eq!(p1.to_bits(), p2.to_bits());
        }
    }

    #[test]
    fn reproduction_passes_on_the_embedded_example() {
        let out = cmd_reproduce(EXACT).unwrap();
        assert!(out.ok, "{}", out.text);
        assert!(out.text.contains("reproduction ok"));
        assert_eq!(out.text.matches("yes").count(), 9);
    }

    #[test]
    fn reproduction_fails_on_a_perturbed_rule() {
        // shift 0.01 of full-menu mass from {B,D} onto {A,B}
        let u = beverages_universe();
        let m = |ls: &[&str]| Menu::from_labels(&u, ls).unwrap();
        let s = |ls: &[&str]| Subset::from_labels(&u, ls).unwrap();
        let full = m(&["A", "B", "D"]);
        let rule = load_explicit(
            u.clone(),
            EmptySetMode::Renormalize,
            &[
                (full, s(&["A", "B"]), 0.31),
                (full, s(&["B", "D"]), 0.39),
                (full, s(&["A", "D"]), 0.2),
                (full, s(&["A", "B", "D"]), 0.1),
                (m(&["A", "B"]), s(&["A"]), 0.1),
                (m(&["A", "B"]), s(&["B"]), 0.1),
                (m(&["A", "B"]), s(&["A", "B"]), 0.8),
                (m(&["A", "D"]), s(&["A"]), 0.1),
                (m(&["A", "D"]), s(&["D"]), 0.1),
                (m(&["A", "D"]), s(&["A", "D"]), 0.8),
                (m(&["B", "D"]), s(&["B"]), 0.2),
                (m(&["B", "D"]), s(&["D"]), 0.2),
                (m(&["B", "D"]), s(&["B", "D"]), 0.6),
            ],
        )
        .unwrap();
        let out = reproduce_report(&rule, EXACT).unwrap();
        assert!(!out.ok);
        assert!(out.text.contains("NO"));
        assert!(out.text.contains("reproduction FAILED"));
    }

    #[test]
    fn ram_command_prints_the_worked_distribution() {
        let path = fixture_path();
        let out = cmd_ram(&path, &["A".into(), "B".into(), "D".into()], PLAIN).unwrap();
        assert!(out.ok);
        assert!(out.text.contains("0.600000"));
        assert!(out.text.contains("0.400000"));
        // singleton menus are forced
        let out = cmd_ram(&path, &["A".into()], PLAIN).unwrap();
        assert!(out.text.contains("1.00000"));
    }

    #[test]
    fn seq_and_compare_commands_render_the_tournament() {
        let path = fixture_path();
        let order: Vec<String> = ["A", "B", "D"].map(String::from).to_vec();
        let out = cmd_seq(
            &path,
            &order,
            Association::LeftFold,
            NoChoicePolicy::Abort,
            PLAIN,
        )
        .unwrap();
        assert!(out.text.contains("0.810000"));

        let out = cmd_compare(
            &path,
            &order,
            None,
            Association::LeftFold,
            NoChoicePolicy::Abort,
            PLAIN,
        )
        .unwrap();
        assert!(out.text.contains("SEQ-dominant"));
        assert!(out.text.contains("0.810000"));
        assert!(out.text.contains("0.600000"));
        assert!(out.text.contains("0.210000"));

        // an explicit menu must match the order's member set
        let menu: Vec<String> = ["D", "A", "B"].map(String::from).to_vec();
        let out = cmd_compare(
            &path,
            &order,
            Some(&menu),
            Association::LeftFold,
            NoChoicePolicy::Abort,
            PLAIN,
        )
        .unwrap();
        assert!(out.text.contains("SEQ-dominant"));
        let mismatched: Vec<String> = ["A", "B"].map(String::from).to_vec();
        assert!(matches!(
            cmd_compare(
                &path,
                &order,
                Some(&mismatched),
                Association::LeftFold,
                NoChoicePolicy::Abort,
                PLAIN,
            ),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn validate_command_distinguishes_health_from_damage() {
        let path = fixture_path();
        let out = cmd_validate(&path, PLAIN).unwrap();
        assert!(out.ok, "{}", out.text);
        assert!(out.text.contains("monotonicity: ok"));

        // drop mass so one menu totals 0.9
        let doc = RuleFile::parse(EMBEDDED_EXAMPLE).unwrap();
        let mut damaged = doc.clone();
        damaged.attention.retain(|e| {
            !(e.menu == ["A", "B"] && e.consider == ["A"])
        });
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("degenerate.json");
        damaged.save(&bad).unwrap();
        let out = cmd_validate(&bad, PLAIN).unwrap();
        assert!(!out.ok);
        assert!(out.text.contains("total mass 0.9"));
    }

    #[test]
    fn axioms_command_reports_the_substantive_failure() {
        let path = fixture_path();
        let out = cmd_axioms(&path, 0.8, PLAIN).unwrap();
        // A4 genuinely fails on this rule, so the command signals it
        assert!(!out.ok);
        assert!(out.text.contains("A4"));
        assert!(out.text.contains("FAILED"));
        assert!(out.text.contains("A4 witness: pi(D"));
        // A1..A3 hold
        for line in out.text.lines().filter(|l| l.starts_with('A')) {
            if line.starts_with("A4") {
                continue;
            }
        }
    }

    #[test]
    fn sweep_and_search_commands_render_summaries() {
        let out = cmd_sweep(&[0.7], &[3], &[UpliftModel::Threshold], PLAIN).unwrap();
        assert!(out.ok);
        // the exact break-even point for p = 0.7, at 6 significant digits
        assert!(out.text.contains("0.765286"), "{}", out.text);

        let out = cmd_search(
            Hypothesis::Equivalence,
            20,
            7,
            3,
            8,
            RuleFamily::FullAttention,
            None,
            PLAIN,
        )
        .unwrap();
        assert!(out.ok);
        assert!(out.text.contains("violations"));
        let violations_line = out
            .text
            .lines()
            .find(|l| l.starts_with("violations"))
            .unwrap();
        assert!(violations_line.ends_with('0'));
    }

    #[test]
    fn csv_mode_emits_comma_separated_cells() {
        let path = fixture_path();
        let style = Style { sig: 6, csv: true };
        let out = cmd_ram(&path, &["A".into(), "B".into()], style).unwrap();
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines[0], "alternative,probability");
        assert_eq!(lines[1], "A,0.900000");
    }

    #[test]
    fn flag_parsers_reject_unknown_words() {
        assert!(parse_association("left").is_ok());
        assert!(parse_association("middle").is_err());
        assert!(parse_policy("bye").is_ok());
        assert!(parse_policy("retry").is_err());
    }
}
