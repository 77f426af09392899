//! Stochastic choice under random attention.
//!
//! A decision maker with a strict utility ranking does not always see every
//! alternative in front of them: attention lands on a random subset of the
//! menu, and the best *considered* alternative is chosen. This crate models
//! that process and compares two architectures for resolving a menu:
//!
//! * **simultaneous** — one attention draw over the whole menu, best
//!   considered alternative wins ([`ram`]);
//! * **sequential** — a binary knockout tournament in which each stage draws
//!   attention over just two alternatives ([`sequential`]).
//!
//! Around the two evaluators sit an attention-rule toolkit with a
//! monotonicity validator ([`attention`]), a closed-form algebra for
//! stage-arity trade-offs ([`arity`]), behavioral law checks ([`laws`]), and
//! a randomized falsification harness ([`harness`]). The `seqram` binary
//! exposes all of it on the command line ([`cli`]).
//!
//! Compiled with the `parallel` feature (on by default) the harness fans
//! trials out with rayon; disabling the feature leaves a pure sequential
//! build with identical outputs.

pub mod arity;
pub mod attention;
pub mod cli;
pub mod core;
pub mod harness;
pub mod laws;
pub mod ram;
pub mod rulefile;
pub mod sequential;
pub mod table;


/// Errors shared by every module in the crate.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    /// Malformed caller input: bad probability, tied utilities, duplicate
    /// labels, an out-of-range flag, and the like.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A structurally valid request that exceeds a documented size bound.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A label that does not name an alternative of the universe in scope.
    #[error("unknown alternative: {0}")]
    UnknownAlternative(String),

    /// The attention rule has no entry for a menu a query needs.
    #[error("rule does not cover menu: {0}")]
    IncompleteRule(String),

    /// Random rule construction exhausted its retry budget.
    #[error("rule generation failed: {0}")]
    Generation(String),

    /// Unusable configuration (unknown hypothesis name, cost form, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A rule file that could not be decoded.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the binary: 1 when the domain data cannot
    /// support the request (an uncovered menu, a generator that gave up),
    /// 2 for unusable input or environment trouble.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::IncompleteRule(_) | Error::Generation(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
