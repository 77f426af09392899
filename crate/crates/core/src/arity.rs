//! Closed-form architecture algebra: success probabilities of a
//! simultaneous n-way evaluation versus an (n-1)-stage binary tournament,
//! parameterized by per-item attention probabilities and conditional
//! accuracies at each arity.
//!
//! Everything here is stateless arithmetic. Near-boundary comparisons
//! (|lhs - rhs| < [`TIE_TOLERANCE`]) are reported as ties and resolved
//! weakly in favor of `holds`.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::{Error, Result};

/// Tie window for closed-form comparisons.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Per-arity attention probability `alpha_k` and conditional accuracy
/// `beta_k`, both in (0, 1], keyed by arity k >= 2.
#[derive(Clone, Debug, PartialEq)]
pub struct ArityParams {
    alpha: BTreeMap<u32, f64>,
    beta: BTreeMap<u32, f64>,
}

impl ArityParams {
    pub fn new(alpha: &[(u32, f64)], beta: &[(u32, f64)]) -> Result<Self> {
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (target, source, name) in [(&mut a, alpha, "alpha"), (&mut b, beta, "beta")] {
            for &(k, v) in source {
                if k < 2 {
                    return Err(Error::InvalidInput(format!(
                        "{name} arity {k} is below 2"
                    )));
                }
                if !(v > 0.0 && v <= 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "{name}_{k} = {v} is outside (0, 1]"
                    )));
                }
                target.insert(k, v);
            }
        }
        Ok(Self { alpha: a, beta: b })
    }

    /// The homogeneous special case: `alpha_k = p`, `beta_k = 1` for every
    /// arity from 2 through `max_arity`.
    pub fn homogeneous(p: f64, max_arity: u32) -> Result<Self> {
        let pairs: Vec<(u32, f64)> = (2..=max_arity).map(|k| (k, p)).collect();
        let betas: Vec<(u32, f64)> = (2..=max_arity).map(|k| (k, 1.0)).collect();
        Self::new(&pairs, &betas)
    }

    /// Just the binary and ternary parameters, the two-stage-versus-triple
    /// comparison most results revolve around.
    pub fn binary_ternary(alpha2: f64, beta2: f64, alpha3: f64, beta3: f64) -> Result<Self> {
        Self::new(&[(2, alpha2), (3, alpha3)], &[(2, beta2), (3, beta3)])
    }

    pub fn alpha(&self, arity: u32) -> Result<f64> {
        self.alpha
            .get(&arity)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("alpha_{arity} is not defined")))
    }

    pub fn beta(&self, arity: u32) -> Result<f64> {
        self.beta
            .get(&arity)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("beta_{arity} is not defined")))
    }
}

/// Success probability of evaluating all `n` items in one stage: attend to
/// every item independently, then pick correctly with conditional accuracy
/// — `alpha_n^n * beta_n`.
pub fn sim_success(params: &ArityParams, n: u32) -> Result<f64> {
    Ok(params.alpha(n)?.powi(n as i32) * params.beta(n)?)
}

/// Success probability of an `n-1`-stage binary tournament: each stage must
/// attend to both contestants and resolve correctly — `(alpha_2^2 beta_2)^(n-1)`.
pub fn seq_success(params: &ArityParams, n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "a tournament needs n >= 2 items, got {n}"
        )));
    }
    Ok((params.alpha(2)?.powi(2) * params.beta(2)?).powi(n as i32 - 1))
}

/// Outcome of the two-stage-versus-ternary comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DominanceReport {
    /// `lhs >= rhs` (weakly; a tie counts as holding).
    pub holds: bool,
    /// `|lhs - rhs| < TIE_TOLERANCE`.
    pub tie: bool,
    /// Sequential side, `alpha_2^4 beta_2^2`.
    pub lhs: f64,
    /// Simultaneous side, `alpha_3^3 beta_3`.
    pub rhs: f64,
    /// The rescaled form `(alpha_2 / alpha_3^(3/4)) * sqrt(beta_2 / beta_3)`.
    /// Crosses 1 exactly where `holds` flips only when `beta_3 = 1` (in
    /// particular in the unit-fidelity illustrations); with `beta_3 < 1` it
    /// overstates the sequential side, so `holds` is always decided by
    /// `lhs` vs `rhs` directly.
    pub multiplicative_margin: f64,
}

/// Does the two-stage binary tournament weakly beat one ternary stage?
/// Exact condition: `alpha_2^4 beta_2^2 >= alpha_3^3 beta_3`.
pub fn dominance_condition(params: &ArityParams) -> Result<DominanceReport> {
    let (a2, b2) = (params.alpha(2)?, params.beta(2)?);
    let (a3, b3) = (params.alpha(3)?, params.beta(3)?);
    let lhs = a2.powi(4) * b2.powi(2);
    let rhs = a3.powi(3) * b3;
    let tie = (lhs - rhs).abs() < TIE_TOLERANCE;
    Ok(DominanceReport {
        holds: lhs >= rhs || tie,
        tie,
        lhs,
        rhs,
        multiplicative_margin: (a2 / a3.powf(0.75)) * (b2 / b3).sqrt(),
    })
}

/// The minimal binary attention `alpha_2` at which the tournament weakly
/// dominates one ternary stage at unit fidelities: `alpha_3^(3/4)`.
pub fn binary_advantage_threshold(alpha3: f64) -> Result<f64> {
    if !(alpha3 > 0.0 && alpha3 <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "alpha_3 = {alpha3} is outside (0, 1]"
        )));
    }
    Ok(alpha3.powf(0.75))
}

/// The q/r form of the superiority claim: two binary stages at per-stage
/// correctness `q` beat one ternary stage at correctness `r` iff `q^2 > r`
/// (strictly).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperiorityQr {
    pub holds: bool,
    /// `|q^2 - r| < TIE_TOLERANCE`; a tie fails the strict inequality.
    pub tie: bool,
    pub q_squared: f64,
    pub r: f64,
}

pub fn superiority_qr(q: f64, r: f64) -> Result<SuperiorityQr> {
    for (name, v) in [("q", q), ("r", r)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::InvalidInput(format!(
                "{name} = {v} is outside (0, 1)"
            )));
        }
    }
    let q_squared = q * q;
    let tie = (q_squared - r).abs() < TIE_TOLERANCE;
    Ok(SuperiorityQr {
        holds: q_squared > r && !tie,
        tie,
        q_squared,
        r,
    })
}

/// The n-item comparison: `alpha_2^(2(n-1)) beta_2^(n-1)` against
/// `alpha_n^n beta_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralDominance {
    pub holds: bool,
    pub tie: bool,
    /// Tournament success, `seq_success(params, n)`.
    pub seq: f64,
    /// Single-stage success, `sim_success(params, n)`.
    pub sim: f64,
}

pub fn general_n_dominance(params: &ArityParams, n: u32) -> Result<GeneralDominance> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "the general comparison needs n >= 3, got {n}"
        )));
    }
    let seq = seq_success(params, n)?;
    let sim = sim_success(params, n)?;
    let tie = (seq - sim).abs() < TIE_TOLERANCE;
    Ok(GeneralDominance {
        holds: seq >= sim || tie,
        tie,
        seq,
        sim,
    })
}

/// Named functional forms for the attention-fidelity operator `Phi(n, alpha)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PhiForm {
    /// `alpha^(n-1)` — the default.
    Power,
    /// `1 / (1 + (1 - alpha)(n - 1))`.
    Reciprocal,
}

impl FromStr for PhiForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(PhiForm::Power),
            "reciprocal" => Ok(PhiForm::Reciprocal),
            other => Err(Error::Config(format!(
                "unknown fidelity form {other:?}; expected \"power\" or \"reciprocal\""
            ))),
        }
    }
}

/// How sharply attention degrades with set size: `Phi(1, alpha) = 1` and,
/// for `alpha < 1`, strictly decreasing in `n` (reciprocal form) or
/// strictly decreasing whenever `alpha > 0` (power form).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityModel {
    alpha: f64,
    form: PhiForm,
}

impl FidelityModel {
    pub fn new(alpha: f64, form: PhiForm) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidInput(format!(
                "fidelity alpha = {alpha} is outside [0, 1]"
            )));
        }
        Ok(Self { alpha, form })
    }

    pub fn power(alpha: f64) -> Result<Self> {
        Self::new(alpha, PhiForm::Power)
    }
}

/// Evaluates `Phi(n, alpha)` under the model's form.
pub fn fidelity(model: FidelityModel, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidInput("set size must be at least 1".into()));
    }
    Ok(match model.form {
        PhiForm::Power => model.alpha.powi(n as i32 - 1),
        PhiForm::Reciprocal => 1.0 / (1.0 + (1.0 - model.alpha) * f64::from(n - 1)),
    })
}
