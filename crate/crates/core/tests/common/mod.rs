//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use delay_games::automaton::tracking::{ColorStateSet, ColorTracking};
use delay_games::behavior::BehaviorFunction;
use delay_games::{Acceptance, Automaton, ParityGame, Player};
use rand::Rng;

/// Winner of every vertex by enumerating all pairs of positional strategies.
/// O wins from `v` iff some O strategy makes every I strategy produce a
/// lasso whose cycle has an even maximal color.
pub fn brute_force_winners(g: &ParityGame) -> Vec<Player> {
    let n = g.len();
    let choices = |p: Player| -> Vec<Vec<usize>> {
        let owned: Vec<usize> = (0..n).filter(|&v| g.owner(v) == p).collect();
        let mut all = vec![vec![usize::MAX; n]];
        for &v in &owned {
            all = all
                .into_iter()
                .flat_map(|s| {
                    g.successors(v).iter().map(move |&w| {
                        let mut t = s.clone();
                        t[v] = w;
                        t
                    })
                })
                .collect();
        }
        all
    };
    let o_strats = choices(Player::O);
    let i_strats = choices(Player::I);
    let mut o_wins = vec![false; n];
    for so in &o_strats {
        let mut good = vec![true; n];
        for si in &i_strats {
            let next: Vec<usize> = (0..n)
                .map(|v| if g.owner(v) == Player::O { so[v] } else { si[v] })
                .collect();
            for (v, ok) in good.iter_mut().enumerate() {
                if *ok && lasso_max_color(g, &next, v) % 2 == 1 {
                    *ok = false;
                }
            }
        }
        for v in 0..n {
            o_wins[v] |= good[v];
        }
    }
    o_wins
        .into_iter()
        .map(|w| if w { Player::O } else { Player::I })
        .collect()
}

/// Maximal color on the cycle of the functional graph `next` entered from `v`.
pub fn lasso_max_color(g: &ParityGame, next: &[usize], v: usize) -> u32 {
    let mut seen = vec![usize::MAX; next.len()];
    let mut path = Vec::new();
    let mut cur = v;
    while seen[cur] == usize::MAX {
        seen[cur] = path.len();
        path.push(cur);
        cur = next[cur];
    }
    path[seen[cur]..].iter().map(|&w| g.color(w)).max().unwrap()
}

/// Exact check that `P`'s recorded strategy wins from every vertex of `P`'s
/// region: in the graph where `P` follows its strategy and the opponent is
/// free, no cycle reachable from the region has a maximal color of the
/// opponent's parity, and the region is never left.
pub fn verify_strategies(
    g: &ParityGame,
    winners: &[Player],
    strategy: impl Fn(usize) -> Option<usize>,
) -> Result<(), String> {
    let n = g.len();
    for p in [Player::I, Player::O] {
        let region: Vec<usize> = (0..n).filter(|&v| winners[v] == p).collect();
        let mut adj = vec![Vec::new(); n];
        for &v in &region {
            if g.owner(v) == p {
                let s = strategy(v).ok_or(format!("{p:?} vertex {v} has no strategy"))?;
                if !g.successors(v).contains(&s) {
                    return Err(format!("strategy edge {v}->{s} is not an edge"));
                }
                adj[v].push(s);
            } else {
                adj[v].extend_from_slice(g.successors(v));
            }
            if let Some(&w) = adj[v].iter().find(|&&w| winners[w] != p) {
                return Err(format!("{p:?} can be pushed out of its region at {v}->{w}"));
            }
        }
        // a bad cycle with top color c lives in the subgraph of colors <= c
        for c in (0..=region.iter().map(|&v| g.color(v)).max().unwrap_or(0)).filter(|c| Player::favored_by(*c) != p) {
            let keep: Vec<bool> = (0..n).map(|v| winners[v] == p && g.color(v) <= c).collect();
            let sub: Vec<Vec<usize>> = (0..n)
                .map(|v| {
                    if keep[v] {
                        adj[v].iter().copied().filter(|&w| keep[w]).collect()
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            for v in (0..n).filter(|&v| keep[v] && g.color(v) == c) {
                if reaches(&sub, v, v) {
                    return Err(format!(
                        "{:?} can force a cycle through {v} with color {c}",
                        p.opponent()
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Whether `to` is reachable from `from` by a nonempty path.
fn reaches(adj: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = adj[from].clone();
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        if !seen[v] {
            seen[v] = true;
            stack.extend_from_slice(&adj[v]);
        }
    }
    false
}

/// Membership of `u v^ω` for a deterministic complete automaton with
/// reachability, safety or parity acceptance.
pub fn lasso_accepts(a: &Automaton, u: &[usize], v: &[usize]) -> bool {
    assert!(!v.is_empty());
    let step = |q: usize, l: usize| a.successor(q, l).expect("deterministic complete");
    let mut q = a.initial();
    let mut prefix_states = vec![q];
    for &l in u {
        q = step(q, l);
        prefix_states.push(q);
    }
    // iterate v until the state at a block boundary repeats
    let mut boundary: HashMap<usize, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    while !boundary.contains_key(&q) {
        boundary.insert(q, blocks.len());
        let mut states = Vec::new();
        for &l in v {
            q = step(q, l);
            states.push(q);
        }
        blocks.push(states);
    }
    let start = boundary[&q];
    let cycle: Vec<usize> = blocks[start..].iter().flatten().copied().collect();
    let all: Vec<usize> = prefix_states.iter().chain(blocks.iter().flatten()).copied().collect();
    match a.acceptance() {
        Acceptance::Reach(f) => all.iter().any(|q| f.contains(q)),
        Acceptance::Safety(f) => all.iter().all(|q| f.contains(q)),
        Acceptance::Parity(c) => cycle.iter().map(|&q| c[q]).max().unwrap() % 2 == 0,
        Acceptance::FiniteReach(_) => panic!("finite-word automaton"),
    }
}

/// Bad `j`-pair by a direct scan over all pairs of positions.
pub fn scan_bad_pair(word: &[usize], j: usize) -> bool {
    (0..word.len())
        .any(|x| word[x] == j && (x + 1..word.len()).any(|y| word[y] == j && word[x + 1..y].iter().all(|&z| z <= j)))
}

/// All words of length `len` over `0..k`.
pub fn words(k: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = k.checked_pow(len as u32).expect("word count overflow");
    (0..total).map(move |mut code| {
        let mut w = vec![0; len];
        for i in (0..len).rev() {
            w[i] = code % k;
            code /= k;
        }
        w
    })
}

pub fn random_word(rng: &mut impl Rng, k: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

/// Behaviors with infinitely many witnesses for domain `d`, computed without
/// the product-powerset graph: the sets `S_ℓ = {r_w : |w| = ℓ}` satisfy
/// `S_{ℓ+1} = {r·a}` and are eventually periodic; a behavior is reached by
/// infinitely many words iff it occurs in some `S_ℓ` of the period.
pub fn family_by_iteration(c: &ColorTracking, d: &ColorStateSet) -> BTreeSet<BehaviorFunction> {
    let start: BTreeSet<BehaviorFunction> = BTreeSet::from([BehaviorFunction::new(
        d.clone(),
        c.members(d).map(|cs| c.set_of([c.reset(cs.base)])).collect(),
    )]);
    let mut history: Vec<BTreeSet<BehaviorFunction>> = vec![start];
    loop {
        let last = history.last().unwrap();
        let next: BTreeSet<BehaviorFunction> = last
            .iter()
            .flat_map(|r| {
                (0..c.input_len()).map(move |a| {
                    BehaviorFunction::new(
                        r.domain().clone(),
                        r.images().iter().map(|s| c.powerset_step(s, a)).collect(),
                    )
                })
            })
            .collect();
        if let Some(i) = history.iter().position(|s| *s == next) {
            return history[i..].iter().flatten().cloned().collect();
        }
        history.push(next);
    }
}

/// Non-empty successor sets of size at most two over `0..n`.
fn successor_choices(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for a in 0..n {
        for b in a + 1..n {
            out.push(vec![a, b]);
        }
    }
    out
}

const LABELS: [(Player, u32); 6] = [
    (Player::I, 0),
    (Player::I, 1),
    (Player::I, 2),
    (Player::O, 0),
    (Player::O, 1),
    (Player::O, 2),
];

/// Non-decreasing label sequences of length `n`.
fn label_sequences(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for l in min..LABELS.len() {
            cur.push(l);
            go(n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

/// Every game on `n` vertices with owners in {I, O}, colors in {0, 1, 2} and
/// out-degree 1 or 2, up to relabeling: vertex labels are sorted, so one
/// representative per label multiset is visited with every edge relation.
pub fn for_each_small_game<E>(n: usize, mut f: impl FnMut(&ParityGame) -> Result<(), E>) -> Result<(), E> {
    let choices = successor_choices(n);
    let configs = choices.len().pow(n as u32);
    for labels in label_sequences(n) {
        let owner: Vec<Player> = labels.iter().map(|&l| LABELS[l].0).collect();
        let color: Vec<u32> = labels.iter().map(|&l| LABELS[l].1).collect();
        for mut code in 0..configs {
            let mut edges = Vec::with_capacity(n);
            for _ in 0..n {
                edges.push(choices[code % choices.len()].clone());
                code /= choices.len();
            }
            let g = ParityGame::new(owner.clone(), color.clone(), edges, 0).expect("well-formed");
            f(&g)?;
        }
    }
    Ok(())
}

pub fn random_game(rng: &mut impl Rng, n: usize, max_out: usize, colors: u32) -> ParityGame {
    let owner = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Player::I } else { Player::O })
        .collect();
    let color = (0..n).map(|_| rng.gen_range(0..colors)).collect();
    let edges = (0..n)
        .map(|_| (0..rng.gen_range(1..=max_out)).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    ParityGame::new(owner, color, edges, 0).expect("well-formed")
}
