//! Executable behavioral laws: four axioms over a rule's induced choice
//! probabilities, plus cognitive-cost arithmetic (a Jensen-style stage
//! decomposition bound and discrete convexity validation).
//!
//! Axiom checks return witness lists, never just booleans: a failing axiom
//! is data about the rule, and some axioms (notably the bounded-cost one)
//! are substantive properties a perfectly coherent rule can lack.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::attention::{validate, AttentionRule};
use crate::core::{Menu, Subset, EPSILON};
use crate::ram::{choice_probability, regularity_check};
use crate::{Error, Result};

/// Which behavioral law a report is about.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AxiomId {
    /// Binary consistency: the better alternative wins each pair with at
    /// least a caller-supplied floor above one half.
    A1,
    /// Transitivity of modal binary choice.
    A2,
    /// Attention monotonicity of the underlying rule.
    A3,
    /// Bounded attention cost: submenus never hurt an alternative.
    A4,
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomId::A1 => "A1",
            AxiomId::A2 => "A2",
            AxiomId::A3 => "A3",
            AxiomId::A4 => "A4",
        })
    }
}

/// Outcome of one axiom check. `holds` is true exactly when `witnesses`
/// is empty.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub holds: bool,
    pub witnesses: Vec<String>,
    /// Instances examined (pairs, triples, or inequalities, per axiom).
    pub coverage: u64,
}

impl AxiomReport {
    fn new(axiom: AxiomId, witnesses: Vec<String>, coverage: u64) -> Self {
        Self {
            axiom,
            holds: witnesses.is_empty(),
            witnesses,
            coverage,
        }
    }
}

/// Every preference-ordered pair `x > y`, ascending by the indices involved.
fn ordered_pairs(rule: &AttentionRule) -> Vec<(usize, usize)> {
    let u = rule.universe();
    let mut pairs = Vec::new();
    for x in 0..u.len() {
        for y in 0..u.len() {
            if x != y && u.utility(x) > u.utility(y) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

/// A1 — binary consistency: `pi(x | {x,y}) >= p_floor` for every pair with
/// `x` preferred. The floor must exceed one half (a coin flip carries no
/// information about preference).
pub fn check_a1(rule: &AttentionRule, p_floor: f64) -> Result<AxiomReport> {
    if !(p_floor > 0.5 && p_floor <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "p_floor = {p_floor} must lie in (0.5, 1]"
        )));
    }
    let u = rule.universe();
    let mut witnesses = Vec::new();
    let mut coverage = 0u64;
    for (x, y) in ordered_pairs(rule) {
        coverage += 1;
        let pair = Menu::new(u, Subset::from_indices([x, y]))?;
        let p = choice_probability(rule, pair)?.prob(x);
        if p < p_floor - EPSILON {
            witnesses.push(format!(
                "pi({} | {}) = {p} is below the floor {p_floor}",
                u.label(x),
                u.describe(pair.as_subset())
            ));
        }
    }
    Ok(AxiomReport::new(AxiomId::A1, witnesses, coverage))
}

/// A2 — transitivity of modal binary choice. With `C(x,y)` read as the
/// *modal* winner of the pair, `C(C(x,y),z) = C(x,z)` holds identically,
/// so the substance of the check is locating pairs with no modal winner:
/// ties (margins within [`EPSILON`]) are reported as witnesses.
pub fn check_a2(rule: &AttentionRule) -> Result<AxiomReport> {
    let u = rule.universe();
    let n = u.len();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let pair = Menu::new(u, Subset::from_indices([x, y]))?;
            let dist = choice_probability(rule, pair)?;
            let margin = (dist.prob(x) - dist.prob(y)).abs();
            if margin <= EPSILON {
                witnesses.push(format!(
                    "no modal winner in {}: pi = {} vs {} (margin {margin:e})",
                    u.describe(pair.as_subset()),
                    dist.prob(x),
                    dist.prob(y)
                ));
            }
        }
    }
    // ordered triples of distinct alternatives, each a premise instance of
    // the transitivity schema
    let coverage = (n * n.saturating_sub(1) * n.saturating_sub(2)) as u64;
    Ok(AxiomReport::new(AxiomId::A2, witnesses, coverage))
}

/// A3 — attention monotonicity, delegated to the rule validator and
/// repackaged with described witnesses.
pub fn check_a3(rule: &AttentionRule) -> AxiomReport {
    let report = validate(rule);
    let witnesses = report
        .monotonicity_violations
        .iter()
        .map(|v| v.describe(rule.universe()))
        .collect();
    AxiomReport::new(AxiomId::A3, witnesses, report.comparisons)
}

/// A4 — bounded attention cost of larger menus: for stored menus `T` inside
/// `S`, every `x` in `T` satisfies `pi(x | T) >= pi(x | S) - eps`. This is
/// a substantive restriction, not a theorem: coherent monotone rules can
/// fail it.
pub fn check_a4(rule: &AttentionRule) -> Result<AxiomReport> {
    let (coverage, violations) = regularity_check(rule)?;
    let witnesses = violations.iter().map(|v| v.describe(rule)).collect();
    Ok(AxiomReport::new(AxiomId::A4, witnesses, coverage))
}

/// Named closed-form cost curves.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CostForm {
    /// `n^2`
    Square,
    /// `2^n`
    Exp2,
    /// `n`
    Linear,
    /// `sqrt(n)` — increasing but concave; useful as a negative case.
    Sqrt,
    /// `n ln n`
    NLogN,
}

impl FromStr for CostForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(CostForm::Square),
            "exp2" => Ok(CostForm::Exp2),
            "linear" => Ok(CostForm::Linear),
            "sqrt" => Ok(CostForm::Sqrt),
            "nlogn" => Ok(CostForm::NLogN),
            other => Err(Error::Config(format!(
                "unknown cost form {other:?}; expected square, exp2, linear, sqrt, or nlogn"
            ))),
        }
    }
}

/// Cognitive cost of processing a set of a given size: either a closed
/// form or an explicit table (strictly increasing by construction).
#[derive(Clone, Debug, PartialEq)]
pub enum CostFunction {
    Named(CostForm),
    Table(BTreeMap<u32, f64>),
}

impl CostFunction {
    pub fn named(form: CostForm) -> Self {
        CostFunction::Named(form)
    }

    /// Builds a tabulated cost curve; values must be non-negative and
    /// strictly increasing in set size.
    pub fn from_table(points: &[(u32, f64)]) -> Result<Self> {
        let mut table = BTreeMap::new();
        for &(n, cost) in points {
            if n == 0 {
                return Err(Error::InvalidInput("set size 0 has no cost".into()));
            }
            if cost < 0.0 || !cost.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "cost {cost} at size {n} must be a non-negative real"
                )));
            }
            if table.insert(n, cost).is_some() {
                return Err(Error::InvalidInput(format!("duplicate size {n}")));
            }
        }
        if table.is_empty() {
            return Err(Error::InvalidInput("cost table is empty".into()));
        }
        let mut prev: Option<(u32, f64)> = None;
        for (&n, &cost) in &table {
            if let Some((pn, pc)) = prev {
                if cost <= pc {
                    return Err(Error::InvalidInput(format!(
                        "cost must increase strictly: phi({n}) = {cost} <= phi({pn}) = {pc}"
                    )));
                }
            }
            prev = Some((n, cost));
        }
        Ok(CostFunction::Table(table))
    }

    /// `phi(n)`; errors when a table has no entry for `n`.
    pub fn eval(&self, n: u32) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidInput("set size 0 has no cost".into()));
        }
        match self {
            CostFunction::Named(form) => Ok(match form {
                CostForm::Square => f64::from(n) * f64::from(n),
                CostForm::Exp2 => 2f64.powi(n as i32),
                CostForm::Linear => f64::from(n),
                CostForm::Sqrt => f64::from(n).sqrt(),
                CostForm::NLogN => f64::from(n) * f64::from(n).ln(),
            }),
            CostFunction::Table(table) => table.get(&n).copied().ok_or_else(|| {
                Error::InvalidInput(format!("cost function is undefined at size {n}"))
            }),
        }
    }
}

/// The stage-decomposition cost comparison: `k` binary stages versus one
/// set of size `2^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JensenReport {
    /// `k * phi(2)` — total cost of the binary decomposition.
    pub lhs: f64,
    /// `phi(2^k)` — cost of taking the set whole.
    pub rhs: f64,
    /// `lhs < rhs` strictly. Strict convexity of `phi` makes this true for
    /// `k >= 2`; linear cost ties instead.
    pub strict_holds: bool,
}

pub fn jensen_cost_check(phi: &CostFunction, k: u32) -> Result<JensenReport> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k >= 32 {
        return Err(Error::Capacity(format!("2^{k} exceeds the set-size range")));
    }
    let lhs = f64::from(k) * phi.eval(2)?;
    let rhs = phi.eval(1u32 << k)?;
    Ok(JensenReport {
        lhs,
        rhs,
        strict_holds: lhs < rhs,
    })
}

/// Discrete shape report for a cost function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvexityReport {
    pub strictly_increasing: bool,
    /// Midpoint convexity `phi(n+1) - phi(n) >= phi(n) - phi(n-1)` at every
    /// checked interior point.
    pub convex: bool,
    /// Same with strict inequality.
    pub strictly_convex: bool,
    /// Interior points examined.
    pub points_checked: u64,
}

/// Probe domain for named closed forms.
const NAMED_PROBE_MAX: u32 = 64;

/// Validates increase and discrete convexity: over sizes 1..=64 for named
/// forms, over every stored run of three consecutive sizes for tables
/// (needs at least one such run).
pub fn validate_convexity(phi: &CostFunction) -> Result<ConvexityReport> {
    let interior: Vec<u32> = match phi {
        CostFunction::Named(_) => (2..NAMED_PROBE_MAX).collect(),
        CostFunction::Table(table) => table
            .keys()
            .copied()
            .filter(|&n| n >= 2 && table.contains_key(&(n - 1)) && table.contains_key(&(n + 1)))
            .collect(),
    };
    if interior.is_empty() {
        return Err(Error::InvalidInput(
            "convexity needs at least three consecutive set sizes".into(),
        ));
    }
    let mut report = ConvexityReport {
        strictly_increasing: true,
        convex: true,
        strictly_convex: true,
        points_checked: interior.len() as u64,
    };
    for &n in &interior {
        let (lo, mid, hi) = (phi.eval(n - 1)?, phi.eval(n)?, phi.eval(n + 1)?);
        if !(mid > lo && hi > mid) {
            report.strictly_increasing = false;
        }
        let (fwd, bwd) = (hi - mid, mid - lo);
        if fwd < bwd {
            report.convex = false;
        }
        if fwd <= bwd {
            report.strictly_convex = false;
        }
    }
    Ok(report)
}
