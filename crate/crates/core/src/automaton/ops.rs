//! Completion, projection and acceptance conversions.

use std::collections::BTreeSet;

use super::{Acceptance, Automaton, Color, Letters, ProductLetter, State};
use crate::error::{Error, Result};

/// Adds a fresh rejecting sink for missing transitions. A complete automaton
/// is returned unchanged.
///
/// The sink is not in `F` for safety acceptance and gets the smallest odd
/// color `>=` the largest existing color for parity acceptance. Completing a
/// reachability automaton would change its language, so it is refused.
pub fn complete(a: &Automaton) -> Result<Automaton> {
    if a.is_complete() {
        return Ok(a.clone());
    }
    let sink = a.state_count();
    let acceptance = match a.acceptance() {
        Acceptance::Reach(_) | Acceptance::FiniteReach(_) => return Err(Error::CompletionUnsound),
        Acceptance::Safety(f) => Acceptance::Safety(f.clone()),
        Acceptance::Parity(colors) => {
            let max = colors.iter().copied().max().unwrap_or(0);
            let odd = if max % 2 == 1 { max } else { max + 1 };
            let mut colors = colors.clone();
            colors.push(odd);
            Acceptance::Parity(colors)
        }
    };
    let letters = a.letters().len();
    let mut edges: Vec<(State, usize, State)> = a.transitions().collect();
    for q in 0..a.state_count() {
        for l in 0..letters {
            if a.run_step(q, l).is_empty() {
                edges.push((q, l, sink));
            }
        }
    }
    edges.extend((0..letters).map(|l| (sink, l, sink)));
    Automaton::new(a.letters().clone(), sink + 1, a.initial(), edges, acceptance)
}

/// Erases the output component: `Δ'(q, a) = ⋃_b Δ(q, (a, b))`.
pub fn project(a: &Automaton) -> Result<Automaton> {
    let Letters::Product { input, .. } = a.letters() else {
        return Err(Error::NotProduct);
    };
    let letters = a.letters();
    let edges = a.transitions().map(|(q, l, p)| (q, letters.split(l).input, p));
    Automaton::new(
        Letters::Plain(input.clone()),
        a.state_count(),
        a.initial(),
        edges,
        a.acceptance().clone(),
    )
}

/// Turns the states selected by `sink` into sinks (self-loops on every
/// letter); all other transitions are kept.
fn with_sinks(a: &Automaton, sink: impl Fn(State) -> bool, acceptance: Acceptance) -> Result<Automaton> {
    let letters = a.letters().len();
    let edges = a
        .transitions()
        .filter(|&(q, _, _)| !sink(q))
        .chain(
            (0..a.state_count())
                .filter(|&q| sink(q))
                .flat_map(|q| (0..letters).map(move |l| (q, l, q))),
        )
        .collect::<Vec<_>>();
    Automaton::new(a.letters().clone(), a.state_count(), a.initial(), edges, acceptance)
}

/// Makes every accepting state of a reachability automaton absorbing. The
/// ω-language is unchanged and `L_*` becomes suffix-closed.
pub fn absorbing(a: &Automaton) -> Result<Automaton> {
    match a.acceptance() {
        Acceptance::Reach(f) => with_sinks(a, |q| f.contains(&q), Acceptance::Reach(f.clone())),
        other => Err(Error::UnsupportedAcceptance {
            operation: "absorbing",
            found: other.kind(),
        }),
    }
}

/// Reads a finite-word acyclic automaton as the reachability automaton for
/// `L_* · Σ^ω`: accepting states become accepting sinks.
pub fn finite_to_reach(a: &Automaton) -> Result<Automaton> {
    match a.acceptance() {
        Acceptance::FiniteReach(f) => with_sinks(a, |q| f.contains(&q), Acceptance::Reach(f.clone())),
        other => Err(Error::UnsupportedAcceptance {
            operation: "finite_to_reach",
            found: other.kind(),
        }),
    }
}

/// Same-size parity automaton for a deterministic reachability or safety
/// automaton.
///
/// Reach: accepting states become sinks of color 2, all others get 1.
/// Safety: rejecting states become sinks of color 1, accepting states get 0.
pub fn to_parity(a: &Automaton) -> Result<Automaton> {
    let kind = a.acceptance().kind();
    match a.acceptance() {
        Acceptance::Reach(_) | Acceptance::Safety(_) => {}
        _ => {
            return Err(Error::UnsupportedAcceptance {
                operation: "to_parity",
                found: kind,
            })
        }
    }
    a.require_deterministic()?;
    let n = a.state_count();
    match a.acceptance() {
        Acceptance::Reach(f) => {
            let colors: Vec<Color> = (0..n).map(|q| if f.contains(&q) { 2 } else { 1 }).collect();
            with_sinks(a, |q| f.contains(&q), Acceptance::Parity(colors))
        }
        Acceptance::Safety(f) => {
            let colors: Vec<Color> = (0..n).map(|q| if f.contains(&q) { 0 } else { 1 }).collect();
            with_sinks(a, |q| !f.contains(&q), Acceptance::Parity(colors))
        }
        _ => unreachable!(),
    }
}

/// The same transition structure read with reachability acceptance over the
/// same accepting set.
pub fn recast_as_reach(a: &Automaton) -> Result<Automaton> {
    let f: BTreeSet<State> = a
        .acceptance()
        .accepting()
        .ok_or(Error::UnsupportedAcceptance {
            operation: "recast_as_reach",
            found: "parity",
        })?
        .clone();
    a.with_acceptance(Acceptance::Reach(f))
}

/// Runs a deterministic automaton on a word of product letters.
pub fn run_product(a: &Automaton, word: &[ProductLetter]) -> Option<Vec<State>> {
    let mut q = a.initial();
    let mut run = vec![q];
    for &p in word {
        q = a.successor(q, a.letters().letter(p))?;
        run.push(q);
    }
    Some(run)
}
