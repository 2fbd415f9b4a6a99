//! Clopen conditions given by acyclic finite-word automata.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use super::{elapsed_ms, stat, DelayResult, Method, SolveOptions};
use crate::automaton::ops::project;
use crate::automaton::{Acceptance, Automaton, State};
use crate::error::{Error, Result};
use crate::game::Player;
use crate::graph;

/// Merges all non-productive states into one non-accepting sink, which also
/// absorbs missing transitions. Returns the result and the length of the
/// longest path from the initial state to an accepting state.
pub fn normalize_acyclic(a: &Automaton) -> Result<(Automaton, usize)> {
    let Acceptance::FiniteReach(f) = a.acceptance() else {
        return Err(Error::UnsupportedAcceptance {
            operation: "normalize_acyclic",
            found: a.acceptance().kind(),
        });
    };
    a.check_acyclic()?;
    let prod = a.productive();
    let n = a.state_count();
    let letters = a.letters().len();

    let mut id = vec![usize::MAX; n];
    let mut kept = 0;
    for q in 0..n {
        if prod[q] {
            id[q] = kept;
            kept += 1;
        }
    }
    let sink = kept;
    let mut edges = Vec::new();
    let mut uses_sink = !prod[a.initial()];
    for q in (0..n).filter(|&q| prod[q]) {
        for l in 0..letters {
            let succ = a.run_step(q, l);
            let mut to_sink = succ.is_empty();
            for &p in succ {
                if prod[p] {
                    edges.push((id[q], l, id[p]));
                } else {
                    to_sink = true;
                }
            }
            if to_sink {
                edges.push((id[q], l, sink));
                uses_sink = true;
            }
        }
    }
    let states = if uses_sink {
        edges.extend((0..letters).map(|l| (sink, l, sink)));
        kept + 1
    } else {
        kept
    };
    let initial = if prod[a.initial()] { id[a.initial()] } else { sink };
    let accepting = f.iter().map(|&q| id[q]).collect();
    let norm = Automaton::new(
        a.letters().clone(),
        states,
        initial,
        edges,
        Acceptance::FiniteReach(accepting),
    )?;

    let depth = longest_to_accepting(&norm).unwrap_or(0);
    Ok((norm, depth))
}

/// Longest path from the initial state ending in an accepting state, if any.
fn longest_to_accepting(a: &Automaton) -> Option<usize> {
    let prod = a.productive();
    if !prod[a.initial()] {
        return None;
    }
    let adj: Vec<Vec<State>> = a
        .adjacency()
        .into_iter()
        .enumerate()
        .map(|(q, s)| {
            if prod[q] {
                s.into_iter().filter(|&p| prod[p]).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    // successors first
    let (comp, _) = graph::strongly_connected_components(&adj);
    let mut order: Vec<State> = (0..adj.len()).filter(|&q| prod[q]).collect();
    order.sort_by_key(|&q| comp[q]);
    let mut best: Vec<Option<usize>> = vec![None; adj.len()];
    for q in order {
        let own = a.is_accepting(q).then_some(0);
        best[q] = adj[q].iter().filter_map(|&p| best[p].map(|d| d + 1)).chain(own).max();
    }
    best[a.initial()]
}

pub fn solve_clopen(a: &Automaton) -> Result<DelayResult> {
    solve_clopen_with(a, &SolveOptions::default())
}

/// Player O wins iff every input word of length `depth` has a prefix
/// accepted by the projection; then `max(depth, 1)` is sufficient.
pub fn solve_clopen_with(a: &Automaton, opts: &SolveOptions) -> Result<DelayResult> {
    let start = Instant::now();
    if !a.letters().is_product() {
        return Err(Error::NotProduct);
    }
    let (norm, depth) = normalize_acyclic(a)?;
    let p = project(&norm)?;
    let inputs = p.letters().len();

    let mut layer: HashSet<Vec<State>> = HashSet::from([vec![p.initial()]]);
    let mut explored = 1usize;
    let mut covered = true;
    for i in 0..=depth {
        let open: Vec<Vec<State>> = layer
            .into_iter()
            .filter(|s| !s.iter().any(|&q| p.is_accepting(q)))
            .collect();
        if i == depth {
            covered = open.is_empty();
            break;
        }
        layer = HashSet::new();
        for s in &open {
            for l in 0..inputs {
                let mut t: Vec<State> = s.iter().flat_map(|&q| p.run_step(q, l).iter().copied()).collect();
                t.sort_unstable();
                t.dedup();
                layer.insert(t);
            }
        }
        explored += layer.len();
        if explored > opts.subset_cap {
            return Err(Error::StateBudgetExceeded {
                what: "subset states",
                cap: opts.subset_cap,
            });
        }
    }

    let mut stats = BTreeMap::new();
    stat(&mut stats, "automaton_states", a.state_count());
    stat(&mut stats, "normalized_states", norm.state_count());
    stat(&mut stats, "depth", depth);
    stat(&mut stats, "subset_states", explored);
    stat(&mut stats, "elapsed_ms", elapsed_ms(start));
    Ok(DelayResult {
        winner: if covered { Player::O } else { Player::I },
        sufficient_lookahead: covered.then_some(depth.max(1) as u64),
        lookahead_formula: None,
        method: Method::ClopenPrefix,
        stats,
    })
}
