//! Running programs: seeded single executions and exhaustive outcome sets.
//!
//! Fuel counts rule applications across the whole execution, including those
//! made inside `if`/`try` conditions. A loop iteration that succeeds without
//! applying any rule also uses one unit, so `skip!` diverges instead of
//! hanging. The step count reported for an execution is the fuel it used.

mod explore;
mod run;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, HostGraph};
use crate::rule::{find_matches, EvalError, Match, Rule};

pub use explore::{outcomes, outcomes_with_cap, OutcomeSet, SuccessClass};
pub use run::{run, trace, RunResult, TraceRecord};

/// Default cap on explored states in [`outcomes`].
pub const DEFAULT_BRANCH_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExecConfig {
    pub seed: u64,
    /// Maximum number of rule applications.
    pub fuel: u64,
    pub trace: bool,
}

impl Default for ExecConfig {
    fn default() -> Self {
        ExecConfig { seed: 0, fuel: 10_000, trace: false }
    }
}

impl ExecConfig {
    pub fn seeded(seed: u64) -> Self {
        ExecConfig { seed, ..Self::default() }
    }

    pub fn with_fuel(self, fuel: u64) -> Self {
        ExecConfig { fuel, ..self }
    }
}

/// A label or condition could not be evaluated while applying a rule.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("rule `{rule}`: {error}")]
pub struct RuntimeError {
    pub rule: String,
    #[serde(serialize_with = "as_display")]
    pub error: EvalError,
}

fn as_display<S: serde::Serializer>(e: &EvalError, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(e)
}

/// Result of one execution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success(HostGraph),
    Fail,
    /// The fuel ran out.
    Diverge,
    Error(RuntimeError),
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success(_))
    }

    pub fn graph(&self) -> Option<&HostGraph> {
        match self {
            Outcome::Success(g) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Success(g) => write!(f, "{g}"),
            Outcome::Fail => f.write_str("FAIL"),
            Outcome::Diverge => f.write_str("DIVERGE"),
            Outcome::Error(e) => write!(f, "ERROR {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error("state space limit of {limit} states exceeded")]
    StateSpaceLimit { limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// Raised by searches that have no outcome to record errors in.
    #[error(transparent)]
    Runtime(RuntimeError),
}

/// Every `(rule index, match)` pair of a rule set, naming the rule whose
/// condition could not be evaluated on failure.
fn candidates<R: AsRef<Rule>>(rules: &[R], g: &HostGraph) -> Result<Vec<(usize, Match)>, RuntimeError> {
    let mut out = Vec::new();
    for (i, r) in rules.iter().enumerate() {
        let r = r.as_ref();
        let ms = find_matches(r, g).map_err(|error| RuntimeError { rule: r.name().to_owned(), error })?;
        out.extend(ms.into_iter().map(|m| (i, m)));
    }
    Ok(out)
}
