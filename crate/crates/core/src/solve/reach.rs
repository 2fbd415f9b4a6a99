//! Reachability conditions: universality of the projection.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde_json::{json, Value};

use super::{elapsed_ms, stat, DelayResult, Method, SolveOptions};
use crate::automaton::ops::{absorbing, project};
use crate::automaton::{Acceptance, Automaton, Letters, ProductLetter, State};
use crate::error::{Error, Result};
use crate::game::Player;
use crate::graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universality {
    pub universal: bool,
    /// Every input word of this length has a prefix accepted by the
    /// projection. Present iff universal; at least 1.
    pub horizon: Option<usize>,
    pub subset_states: usize,
}

/// Reachable part of the subset construction of an absorbing projection.
/// Accepting subsets are not expanded.
struct SubsetGraph {
    sets: Vec<Vec<State>>,
    accepting: Vec<bool>,
    succ: Vec<Vec<usize>>,
}

fn subset_graph(p: &Automaton, cap: usize) -> Result<SubsetGraph> {
    let letters = p.letters().len();
    let mut g = SubsetGraph {
        sets: vec![vec![p.initial()]],
        accepting: vec![p.is_accepting(p.initial())],
        succ: vec![Vec::new()],
    };
    let mut index: HashMap<Vec<State>, usize> = HashMap::from([(vec![p.initial()], 0)]);
    let mut next = 0;
    while next < g.sets.len() {
        let v = next;
        next += 1;
        if g.accepting[v] {
            continue;
        }
        let mut row = Vec::with_capacity(letters);
        for l in 0..letters {
            let mut t: Vec<State> = g.sets[v]
                .iter()
                .flat_map(|&q| p.run_step(q, l).iter().copied())
                .collect();
            t.sort_unstable();
            t.dedup();
            let w = match index.get(&t) {
                Some(&w) => w,
                None => {
                    if g.sets.len() >= cap {
                        return Err(Error::StateBudgetExceeded {
                            what: "subset states",
                            cap,
                        });
                    }
                    let w = g.sets.len();
                    g.accepting.push(t.iter().any(|&q| p.is_accepting(q)));
                    index.insert(t.clone(), w);
                    g.sets.push(t);
                    g.succ.push(Vec::new());
                    w
                }
            };
            row.push(w);
        }
        g.succ[v] = row;
    }
    Ok(g)
}

fn require_reach_product(a: &Automaton) -> Result<()> {
    if !matches!(a.acceptance(), Acceptance::Reach(_)) {
        return Err(Error::UnsupportedAcceptance {
            operation: "reachability solver",
            found: a.acceptance().kind(),
        });
    }
    if !a.letters().is_product() {
        return Err(Error::NotProduct);
    }
    Ok(())
}

/// Decides whether the projection of a reachability automaton accepts every
/// infinite input word, with the default subset cap.
pub fn check_projection_universal(a: &Automaton) -> Result<Universality> {
    check_projection_universal_with(a, &SolveOptions::default())
}

pub fn check_projection_universal_with(a: &Automaton, opts: &SolveOptions) -> Result<Universality> {
    require_reach_product(a)?;
    let p = project(&absorbing(a)?)?;
    let g = subset_graph(&p, opts.subset_cap)?;
    // restrict to non-accepting subsets
    let adj: Vec<Vec<usize>> = (0..g.sets.len())
        .map(|v| {
            if g.accepting[v] {
                Vec::new()
            } else {
                g.succ[v].iter().copied().filter(|&w| !g.accepting[w]).collect()
            }
        })
        .collect();
    let cyclic = graph::cyclic_vertices(&adj).into_iter().any(|c| c);
    let horizon = if cyclic {
        None
    } else if g.accepting[0] {
        Some(1)
    } else {
        Some(1 + graph::longest_path_from(&adj, 0))
    };
    Ok(Universality {
        universal: !cyclic,
        horizon,
        subset_states: g.sets.len(),
    })
}

pub fn solve_reachability(a: &Automaton) -> Result<DelayResult> {
    solve_reachability_with(a, &SolveOptions::default())
}

/// Player O wins for some constant lookahead iff the projection is
/// universal; the horizon is then a sufficient lookahead.
pub fn solve_reachability_with(a: &Automaton, opts: &SolveOptions) -> Result<DelayResult> {
    let start = Instant::now();
    let u = check_projection_universal_with(a, opts)?;
    let mut stats = BTreeMap::new();
    stat(&mut stats, "automaton_states", a.state_count());
    stat(&mut stats, "subset_states", u.subset_states);
    stat(&mut stats, "elapsed_ms", elapsed_ms(start));
    Ok(DelayResult {
        winner: if u.universal { Player::O } else { Player::I },
        sufficient_lookahead: u.horizon.map(|h| h as u64),
        lookahead_formula: None,
        method: Method::ReachUniversality,
        stats,
    })
}

/// Maps every minimal nonempty input word accepted by the projection to an
/// output word of the same length completing it to an accepted word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupStrategy {
    pub entries: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl LookupStrategy {
    /// The entry for the unique entry word that is a prefix of `input`.
    pub fn lookup(&self, input: &[usize]) -> Option<(&[usize], &[usize])> {
        (1..=input.len()).find_map(|n| {
            self.entries
                .get_key_value(&input[..n])
                .map(|(u, v)| (u.as_slice(), v.as_slice()))
        })
    }

    pub fn to_json(&self, letters: &Letters) -> Value {
        let out = letters.output().expect("product alphabet");
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|(u, v)| {
                json!({
                    "input": u.iter().map(|&a| letters.input().symbol(a)).collect::<Vec<_>>(),
                    "output": v.iter().map(|&b| out.symbol(b)).collect::<Vec<_>>(),
                })
            })
            .collect();
        Value::Array(rows)
    }
}

/// Output word for `input` reaching an accepting state of the absorbing
/// automaton `abs`, by forward search with predecessor tracking.
fn completing_outputs(abs: &Automaton, input: &[usize]) -> Option<Vec<usize>> {
    let letters = abs.letters();
    let outputs = letters.output_len();
    // layers[i]: state -> (predecessor state, output letter)
    let mut layers: Vec<BTreeMap<State, (State, usize)>> = vec![BTreeMap::from([(abs.initial(), (abs.initial(), 0))])];
    for &a in input {
        let mut next = BTreeMap::new();
        for &q in layers.last().unwrap().keys() {
            for b in 0..outputs {
                let l = letters.letter(ProductLetter { input: a, output: b });
                for &p in abs.run_step(q, l) {
                    next.entry(p).or_insert((q, b));
                }
            }
        }
        layers.push(next);
    }
    let mut q = *layers.last()?.keys().find(|&&q| abs.is_accepting(q))?;
    let mut word = vec![0; input.len()];
    for i in (1..layers.len()).rev() {
        let (p, b) = layers[i][&q];
        word[i - 1] = b;
        q = p;
    }
    Some(word)
}

/// Lookup table for a reachability automaton won by Player O.
pub fn extract_lookup_strategy(a: &Automaton, opts: &SolveOptions) -> Result<LookupStrategy> {
    let u = check_projection_universal_with(a, opts)?;
    if !u.universal {
        return Err(Error::NotWinnable);
    }
    let abs = absorbing(a)?;
    let p = project(&abs)?;
    let g = subset_graph(&p, opts.subset_cap)?;
    let inputs = p.letters().len();
    let mut entries = BTreeMap::new();
    // depth-first over input words, tracking subset vertices
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((word, v)) = stack.pop() {
        for a in (0..inputs).rev() {
            let mut w = word.clone();
            w.push(a);
            // the initial subset may be accepting and is then not expanded
            let t = if g.accepting[v] { v } else { g.succ[v][a] };
            if g.accepting[t] {
                let out = completing_outputs(&abs, &w).expect("accepted projection word has a completion");
                if entries.len() >= opts.subset_cap {
                    return Err(Error::StateBudgetExceeded {
                        what: "lookup entries",
                        cap: opts.subset_cap,
                    });
                }
                entries.insert(w, out);
            } else {
                stack.push((w, t));
            }
        }
    }
    Ok(LookupStrategy { entries })
}
