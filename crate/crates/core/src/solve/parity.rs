//! Parity and safety conditions via the abstract game over behaviors.

use std::collections::BTreeMap;
use std::time::Instant;

use super::{elapsed_ms, stat, DelayResult, Method, SolveOptions};
use crate::automaton::ops::to_parity;
use crate::automaton::tracking::ColorTracking;
use crate::automaton::{Acceptance, Automaton};
use crate::behavior::{enumerate_family, BehaviorFamily};
use crate::error::{Error, Result};
use crate::game::{build_abstract_game, solve, winner_from, AbstractGame, GameSolution, Player};

/// A sufficient lookahead for parity conditions: the smaller of `2·2^{n²}`
/// and `2^{2|𝒜|k+2}+2`, where `n` is the size of the color-tracking
/// automaton and `k` the number of distinct colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookaheadBound {
    /// `None` when neither term fits 64 bits.
    pub value: Option<u64>,
    pub formula: String,
}

fn pow2_plus(exp: u128, add: u64) -> Option<u64> {
    if exp >= 64 {
        return None;
    }
    (1u64 << exp).checked_add(add)
}

fn pow2_times2(exp: u128) -> Option<u64> {
    if exp >= 63 {
        return None;
    }
    Some(2u64 << exp)
}

pub fn parity_bound(tracking_size: usize, states: usize, colors: usize) -> LookaheadBound {
    let n = tracking_size as u128;
    let e1 = n * n;
    let e2 = 2 * states as u128 * colors as u128 + 2;
    let value = match (pow2_times2(e1), pow2_plus(e2, 2)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    LookaheadBound {
        value,
        formula: format!("min(2·2^{{{e1}}}, 2^{{2·{states}·{colors}+2}}+2)"),
    }
}

/// Intermediate artifacts of the parity pipeline.
#[derive(Clone, Debug)]
pub struct ParityAnalysis {
    pub tracking: ColorTracking,
    pub family: BehaviorFamily,
    pub game: AbstractGame,
    pub solution: GameSolution,
    pub result: DelayResult,
}

pub fn analyze_parity(a: &Automaton, opts: &SolveOptions) -> Result<ParityAnalysis> {
    let start = Instant::now();
    let tracking = ColorTracking::new(a)?;
    let seed = tracking.set_of([tracking.initial()]);
    let family = enumerate_family(&tracking, &[seed], opts.macro_state_cap)?;
    let game = build_abstract_game(&tracking, &family)?;
    if game.game.len() > opts.game_vertex_cap {
        return Err(Error::StateBudgetExceeded {
            what: "abstract game vertices",
            cap: opts.game_vertex_cap,
        });
    }
    let solution = solve(&game.game);
    let winner = winner_from(&game.game, &solution, game.game.initial());

    let k = tracking.palette().len();
    let bound = parity_bound(tracking.size(), a.state_count(), k);
    let (sufficient_lookahead, lookahead_formula) = match winner {
        Player::O => (bound.value, Some(bound.formula)),
        Player::I => (None, None),
    };
    let mut stats = BTreeMap::new();
    stat(&mut stats, "automaton_states", a.state_count());
    stat(&mut stats, "colors", k);
    stat(&mut stats, "color_states", tracking.size());
    stat(&mut stats, "macro_states", family.macro_states());
    stat(&mut stats, "family_members", family.len());
    stat(&mut stats, "family_domains", family.domains().count());
    stat(&mut stats, "game_vertices", game.game.len());
    stat(&mut stats, "game_edges", game.game.edge_count());
    stat(&mut stats, "elapsed_ms", elapsed_ms(start));
    let result = DelayResult {
        winner,
        sufficient_lookahead,
        lookahead_formula,
        method: Method::ParityAbstract,
        stats,
    };
    Ok(ParityAnalysis {
        tracking,
        family,
        game,
        solution,
        result,
    })
}

pub fn solve_parity(a: &Automaton) -> Result<DelayResult> {
    solve_parity_with(a, &SolveOptions::default())
}

/// Solves the abstract game `𝒢(𝒜)` for a deterministic complete parity
/// automaton.
pub fn solve_parity_with(a: &Automaton, opts: &SolveOptions) -> Result<DelayResult> {
    analyze_parity(a, opts).map(|an| an.result)
}

pub fn solve_safety(a: &Automaton) -> Result<DelayResult> {
    solve_safety_with(a, &SolveOptions::default())
}

/// Converts a deterministic complete safety automaton to parity and solves.
pub fn solve_safety_with(a: &Automaton, opts: &SolveOptions) -> Result<DelayResult> {
    if !matches!(a.acceptance(), Acceptance::Safety(_)) {
        return Err(Error::UnsupportedAcceptance {
            operation: "safety solver",
            found: a.acceptance().kind(),
        });
    }
    let mut r = solve_parity_with(&to_parity(a)?, opts)?;
    r.method = Method::SafetyAsParity;
    Ok(r)
}
