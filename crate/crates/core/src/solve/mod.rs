//! Top-level decision procedures for delay games with constant lookahead.

mod clopen;
mod parity;
mod reach;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::automaton::{Acceptance, Automaton};
use crate::behavior::DEFAULT_MACRO_STATE_CAP;
use crate::error::Result;
use crate::game::Player;

pub use clopen::{normalize_acyclic, solve_clopen, solve_clopen_with};
pub use parity::{
    analyze_parity, parity_bound, solve_parity, solve_parity_with, solve_safety, solve_safety_with, LookaheadBound,
    ParityAnalysis,
};
pub use reach::{
    check_projection_universal, check_projection_universal_with, extract_lookup_strategy, solve_reachability,
    solve_reachability_with, LookupStrategy, Universality,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ParityAbstract,
    ReachUniversality,
    SafetyAsParity,
    ClopenPrefix,
}

/// Outcome of a solver. `sufficient_lookahead` is a sufficient (not
/// necessarily minimal) constant lookahead for Player O, present only when O
/// wins and the value fits 64 bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DelayResult {
    pub winner: Player,
    pub sufficient_lookahead: Option<u64>,
    pub lookahead_formula: Option<String>,
    pub method: Method,
    pub stats: BTreeMap<String, Value>,
}

/// Resource caps for the exponential constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Product-powerset macro-states explored during family enumeration.
    pub macro_state_cap: usize,
    /// Subset-construction states.
    pub subset_cap: usize,
    /// Vertices of the abstract game.
    pub game_vertex_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            macro_state_cap: DEFAULT_MACRO_STATE_CAP,
            subset_cap: DEFAULT_MACRO_STATE_CAP,
            game_vertex_cap: 1 << 22,
        }
    }
}

impl SolveOptions {
    /// The same cap for every construction.
    pub fn uniform(cap: usize) -> Self {
        SolveOptions {
            macro_state_cap: cap,
            subset_cap: cap,
            game_vertex_cap: cap,
        }
    }
}

/// Dispatches on the acceptance condition.
pub fn solve_auto(a: &Automaton, opts: &SolveOptions) -> Result<DelayResult> {
    match a.acceptance() {
        Acceptance::Reach(_) => solve_reachability_with(a, opts),
        Acceptance::Safety(_) => solve_safety_with(a, opts),
        Acceptance::Parity(_) => solve_parity_with(a, opts),
        Acceptance::FiniteReach(_) => solve_clopen_with(a, opts),
    }
}

fn stat(stats: &mut BTreeMap<String, Value>, key: &str, value: impl Into<Value>) {
    stats.insert(key.to_string(), value.into());
}

fn elapsed_ms(start: std::time::Instant) -> Value {
    Value::from((start.elapsed().as_secs_f64() * 1e6).round() / 1e3)
}
