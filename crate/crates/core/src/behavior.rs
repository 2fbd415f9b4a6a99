//! Behavior functions of lookahead words and the family of behaviors with
//! infinitely many witnesses.
//!
//! For a nonempty set `D` of color states and an input word `w`, the
//! behavior `r_w^D` maps every `(q, c) ∈ D` to `δ_P^*({(q, Ω(q))}, w)`. The
//! accumulator `c` of the argument is ignored, so images only depend on the
//! base states of `D`. All behaviors with a fixed domain are the states of
//! one deterministic automaton over `Σ_I`: the product, over the distinct
//! base states of `D`, of the powerset automaton of `π(𝒞)` started in the
//! reset singletons. That product is what [`MacroGraph`] explores.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde_json::{json, Value};

use crate::automaton::tracking::{ColorStateSet, ColorTracking};
use crate::automaton::{Acceptance, Automaton, Letters, State};
use crate::error::{Error, Result};
use crate::graph;

/// Default cap on explored macro-states.
pub const DEFAULT_MACRO_STATE_CAP: usize = 1 << 20;

/// A partial map from color states to nonempty sets of color states.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BehaviorFunction {
    domain: ColorStateSet,
    /// Aligned with the ascending iteration order of `domain`.
    images: Vec<ColorStateSet>,
}

impl BehaviorFunction {
    pub fn new(domain: ColorStateSet, images: Vec<ColorStateSet>) -> Self {
        assert_eq!(domain.len(), images.len(), "one image per domain element");
        BehaviorFunction { domain, images }
    }

    pub fn domain(&self) -> &ColorStateSet {
        &self.domain
    }

    /// `r(q)` for a color-state index `q`, or `None` outside the domain.
    pub fn image(&self, index: usize) -> Option<&ColorStateSet> {
        self.domain.iter().position(|d| d == index).map(|i| &self.images[i])
    }

    /// `(domain element, image)` pairs in ascending domain order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &ColorStateSet)> {
        self.domain.iter().zip(self.images.iter())
    }

    pub fn images(&self) -> &[ColorStateSet] {
        &self.images
    }

    pub fn to_json(&self, c: &ColorTracking) -> Value {
        let set = |s: &ColorStateSet| {
            c.members(s)
                .map(|cs| json!([cs.base, cs.accumulated]))
                .collect::<Vec<_>>()
        };
        json!({
            "domain": set(&self.domain),
            "images": self.entries().map(|(d, img)| {
                let cs = c.color_state(d);
                json!({ "from": [cs.base, cs.accumulated], "to": set(img) })
            }).collect::<Vec<_>>(),
        })
    }
}

fn distinct_bases(c: &ColorTracking, domain: &ColorStateSet) -> Vec<State> {
    let mut bases: Vec<State> = c.members(domain).map(|cs| cs.base).collect();
    bases.dedup();
    bases
}

/// `r_w^D`.
pub fn behavior_of_word(c: &ColorTracking, domain: &ColorStateSet, word: &[usize]) -> BehaviorFunction {
    assert!(!domain.is_empty(), "behavior domains are nonempty");
    let mut per_base: BTreeMap<State, ColorStateSet> = BTreeMap::new();
    let images = c
        .members(domain)
        .map(|cs| {
            per_base
                .entry(cs.base)
                .or_insert_with(|| {
                    let start = c.set_of([c.reset(cs.base)]);
                    c.powerset_run(&start, word)
                })
                .clone()
        })
        .collect();
    BehaviorFunction::new(domain.clone(), images)
}

/// The reachable part of the product-powerset automaton for one set of base
/// states. Vertex 0 is the reset tuple; vertices are numbered in
/// breadth-first order.
#[derive(Clone, Debug)]
pub struct MacroGraph {
    bases: Vec<State>,
    width: usize,
    tuples: Vec<Box<[u64]>>,
    index: HashMap<Box<[u64]>, usize>,
    succ: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
    infinite: Vec<bool>,
}

impl MacroGraph {
    /// Explores the graph for `bases`, charging new vertices against
    /// `budget`.
    pub fn build(c: &ColorTracking, bases: &[State], budget: &mut usize, cap: usize) -> Result<Self> {
        let width = ColorStateSet::empty(c.size()).words().len();
        let inputs = c.input_len();
        let mut g = MacroGraph {
            bases: bases.to_vec(),
            width,
            tuples: Vec::new(),
            index: HashMap::new(),
            succ: Vec::new(),
            parent: Vec::new(),
            infinite: Vec::new(),
        };
        let mut init = Vec::with_capacity(bases.len() * width);
        for &b in bases {
            init.extend_from_slice(c.set_of([c.reset(b)]).words());
        }
        g.intern(init.into_boxed_slice(), None, budget, cap)?;

        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let mut row = Vec::with_capacity(inputs);
            for a in 0..inputs {
                let mut next = Vec::with_capacity(g.tuples[v].len());
                for j in 0..bases.len() {
                    let comp = ColorStateSet::from_words(&g.tuples[v][j * width..(j + 1) * width]);
                    next.extend_from_slice(c.powerset_step(&comp, a).words());
                }
                let before = g.tuples.len();
                let w = g.intern(next.into_boxed_slice(), Some((v, a)), budget, cap)?;
                if w == before {
                    queue.push_back(w);
                }
                row.push(w);
            }
            g.succ.push(row);
        }

        let cyclic = graph::cyclic_vertices(&g.succ);
        g.infinite = graph::forward_closure(&g.succ, (0..g.len()).filter(|&v| cyclic[v]));
        Ok(g)
    }

    fn intern(
        &mut self,
        tuple: Box<[u64]>,
        parent: Option<(usize, usize)>,
        budget: &mut usize,
        cap: usize,
    ) -> Result<usize> {
        if let Some(&v) = self.index.get(&tuple) {
            return Ok(v);
        }
        if *budget >= cap {
            return Err(Error::StateBudgetExceeded {
                what: "behavior macro-states",
                cap,
            });
        }
        *budget += 1;
        let v = self.tuples.len();
        self.index.insert(tuple.clone(), v);
        self.tuples.push(tuple);
        self.parent.push(parent);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn bases(&self) -> &[State] {
        &self.bases
    }

    /// Successor of `v` under input letter `a`.
    pub fn successor(&self, v: usize, a: usize) -> usize {
        self.succ[v][a]
    }

    /// Whether infinitely many words lead to `v`.
    pub fn is_infinite(&self, v: usize) -> bool {
        self.infinite[v]
    }

    fn component(&self, v: usize, j: usize) -> ColorStateSet {
        ColorStateSet::from_words(&self.tuples[v][j * self.width..(j + 1) * self.width])
    }

    /// The behavior with domain `domain` represented by vertex `v`.
    pub fn behavior(&self, c: &ColorTracking, domain: &ColorStateSet, v: usize) -> BehaviorFunction {
        let images = c
            .members(domain)
            .map(|cs| {
                let j = self.bases.binary_search(&cs.base).expect("domain base in graph");
                self.component(v, j)
            })
            .collect();
        BehaviorFunction::new(domain.clone(), images)
    }

    /// The vertex whose tuple equals the images of `r`, if reachable.
    pub fn locate(&self, r: &BehaviorFunction, c: &ColorTracking) -> Option<usize> {
        let mut tuple: Vec<Option<&ColorStateSet>> = vec![None; self.bases.len()];
        for (d, img) in r.entries() {
            let j = self.bases.binary_search(&c.color_state(d).base).ok()?;
            match tuple[j] {
                Some(prev) if prev != img => return None,
                _ => tuple[j] = Some(img),
            }
        }
        let mut words = Vec::with_capacity(self.bases.len() * self.width);
        for t in tuple {
            words.extend_from_slice(t?.words());
        }
        self.index.get(words.as_slice()).copied()
    }

    /// A shortest word leading from the reset tuple to `v`.
    pub fn shortest_word(&self, v: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = v;
        while let Some((p, a)) = self.parent[cur] {
            word.push(a);
            cur = p;
        }
        word.reverse();
        word
    }

    /// Shortest path from `from` to `to` as `(word)`, by breadth-first search.
    fn path(&self, from: usize, to: usize, nonempty: bool) -> Option<Vec<usize>> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        if !nonempty {
            if from == to {
                return Some(Vec::new());
            }
            seen[from] = true;
        }
        // Seed with the successors of `from` so that a nonempty cycle back to
        // `from` is found when requested.
        for (a, &w) in self.succ[from].iter().enumerate() {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((from, a));
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut word = Vec::new();
                let mut cur = v;
                loop {
                    let (p, a) = prev[cur].expect("path predecessor");
                    word.push(a);
                    if p == from {
                        break;
                    }
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for (a, &w) in self.succ[v].iter().enumerate() {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, a));
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// A word of length at least `min_len` leading to `target`, obtained by
    /// pumping a cycle on a shortest detour. `None` if only finitely many
    /// words lead to `target` and all are shorter than `min_len`.
    pub fn word_at_least(&self, target: usize, min_len: usize) -> Option<Vec<usize>> {
        let shortest = self.shortest_word(target);
        if shortest.len() >= min_len {
            return Some(shortest);
        }
        if !self.infinite[target] {
            return None;
        }
        let cyclic = graph::cyclic_vertices(&self.succ);
        let from_init = bfs_dist(&self.succ, 0);
        let mut rev = vec![Vec::new(); self.len()];
        for (v, row) in self.succ.iter().enumerate() {
            for &w in row {
                rev[w].push(v);
            }
        }
        let to_target = bfs_dist(&rev, target);
        let pump = (0..self.len())
            .filter(|&p| cyclic[p])
            .filter_map(|p| Some((from_init[p]? + to_target[p]?, p)))
            .min()?
            .1;
        let prefix = self.shortest_word(pump);
        let cycle = self.path(pump, pump, true)?;
        let suffix = self.path(pump, target, false)?;
        let base = prefix.len() + suffix.len();
        let reps = (min_len.saturating_sub(base)).div_ceil(cycle.len());
        let mut word = prefix;
        for _ in 0..reps {
            word.extend_from_slice(&cycle);
        }
        word.extend(suffix);
        Some(word)
    }
}

fn bfs_dist(adj: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A deterministic automaton over `Σ_I` whose finite-word language `L_*` is
/// the witness language `W_r`: the product-powerset automaton for `dom(r)`
/// with the tuple of `r`'s images as its single accepting state. The
/// ω-reading of its reachability acceptance is not meaningful here.
pub fn witness_automaton(c: &ColorTracking, r: &BehaviorFunction, cap: usize) -> Result<Automaton> {
    let mut budget = 0;
    let g = MacroGraph::build(c, &distinct_bases(c, r.domain()), &mut budget, cap)?;
    let accepting = g.locate(r, c).into_iter().collect();
    let edges = (0..g.len()).flat_map(|v| {
        let g = &g;
        (0..c.input_len()).map(move |a| (v, a, g.successor(v, a)))
    });
    Automaton::new(
        Letters::Plain(c.letters().input().clone()),
        g.len(),
        0,
        edges.collect::<Vec<_>>(),
        Acceptance::Reach(accepting),
    )
}

/// Some `w ∈ W_r` with `|w| >= min_len`. Fails with
/// [`Error::NotInFamily`] when `W_r` is finite.
pub fn witness_sample(c: &ColorTracking, r: &BehaviorFunction, min_len: usize, cap: usize) -> Result<Vec<usize>> {
    let mut budget = 0;
    let g = MacroGraph::build(c, &distinct_bases(c, r.domain()), &mut budget, cap)?;
    let target = g.locate(r, c).ok_or(Error::NotInFamily)?;
    if !g.is_infinite(target) {
        return Err(Error::NotInFamily);
    }
    g.word_at_least(target, min_len).ok_or(Error::NotInFamily)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct MemberSource {
    graph: usize,
    vertex: usize,
}

/// The behaviors with infinite witness languages, for every domain reachable
/// from the seed domains by following images.
#[derive(Clone, Debug)]
pub struct BehaviorFamily {
    members: Vec<BehaviorFunction>,
    sources: Vec<MemberSource>,
    by_domain: BTreeMap<ColorStateSet, Vec<usize>>,
    graphs: Vec<MacroGraph>,
    macro_states: usize,
}

impl BehaviorFamily {
    pub fn members(&self) -> &[BehaviorFunction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member indices with the given domain (empty if the domain was never
    /// enumerated).
    pub fn with_domain(&self, domain: &ColorStateSet) -> &[usize] {
        self.by_domain.get(domain).map_or(&[], Vec::as_slice)
    }

    pub fn domains(&self) -> impl Iterator<Item = &ColorStateSet> {
        self.by_domain.keys()
    }

    pub fn contains(&self, r: &BehaviorFunction) -> bool {
        self.with_domain(r.domain()).iter().any(|&i| &self.members[i] == r)
    }

    /// Total number of explored macro-states over all product graphs.
    pub fn macro_states(&self) -> usize {
        self.macro_states
    }

    /// A shortest witness of member `i`.
    pub fn shortest_witness(&self, i: usize) -> Vec<usize> {
        let s = self.sources[i];
        self.graphs[s.graph].shortest_word(s.vertex)
    }

    /// A witness of member `i` with length at least `min_len`.
    pub fn witness_at_least(&self, i: usize, min_len: usize) -> Vec<usize> {
        let s = self.sources[i];
        self.graphs[s.graph]
            .word_at_least(s.vertex, min_len)
            .expect("family members have infinitely many witnesses")
    }

    /// Debug dump: every domain with its members and one witness each.
    pub fn to_json(&self, c: &ColorTracking) -> Value {
        let input = c.letters().input();
        let domains: Vec<Value> = self
            .by_domain
            .iter()
            .map(|(domain, idx)| {
                json!({
                    "domain": c.members(domain).map(|cs| json!([cs.base, cs.accumulated])).collect::<Vec<_>>(),
                    "members": idx.iter().map(|&i| {
                        let mut m = self.members[i].to_json(c);
                        m["id"] = json!(i);
                        m["witness"] = json!(self.shortest_witness(i).iter().map(|&a| input.symbol(a)).collect::<Vec<_>>());
                        m
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "color_states": c.size(), "members": self.len(), "domains": domains })
    }
}

/// Enumerates the behaviors with infinite witness languages for every domain
/// in `seeds` and, transitively, for every image of an enumerated member.
pub fn enumerate_family(c: &ColorTracking, seeds: &[ColorStateSet], cap: usize) -> Result<BehaviorFamily> {
    let mut fam = BehaviorFamily {
        members: Vec::new(),
        sources: Vec::new(),
        by_domain: BTreeMap::new(),
        graphs: Vec::new(),
        macro_states: 0,
    };
    let mut graph_of: HashMap<Vec<State>, usize> = HashMap::new();
    let mut queue: VecDeque<ColorStateSet> = VecDeque::new();
    for d in seeds {
        assert!(!d.is_empty(), "behavior domains are nonempty");
        if !fam.by_domain.contains_key(d) {
            fam.by_domain.insert(d.clone(), Vec::new());
            queue.push_back(d.clone());
        }
    }

    while let Some(domain) = queue.pop_front() {
        let bases = distinct_bases(c, &domain);
        let gi = match graph_of.get(&bases) {
            Some(&gi) => gi,
            None => {
                let g = MacroGraph::build(c, &bases, &mut fam.macro_states, cap)?;
                fam.graphs.push(g);
                graph_of.insert(bases, fam.graphs.len() - 1);
                fam.graphs.len() - 1
            }
        };
        let g = &fam.graphs[gi];
        let mut ids = Vec::new();
        for v in (0..g.len()).filter(|&v| g.is_infinite(v)) {
            let r = g.behavior(c, &domain, v);
            for img in r.images() {
                if !fam.by_domain.contains_key(img) {
                    fam.by_domain.insert(img.clone(), Vec::new());
                    queue.push_back(img.clone());
                }
            }
            ids.push(fam.members.len());
            fam.members.push(r);
            fam.sources.push(MemberSource { graph: gi, vertex: v });
        }
        fam.by_domain.insert(domain, ids);
    }
    Ok(fam)
}
