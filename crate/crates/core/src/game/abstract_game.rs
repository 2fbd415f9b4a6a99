//! The finite parity game over behavior functions.

use std::collections::{HashMap, VecDeque};

use super::{ParityGame, Player};
use crate::automaton::tracking::{ColorStateSet, ColorTracking};
use crate::behavior::BehaviorFamily;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbstractVertex {
    /// `v_I`.
    Start,
    /// A family member, by index.
    Behavior(usize),
    /// A member together with a color state of its domain.
    Pick { member: usize, state: usize },
}

#[derive(Clone, Debug)]
pub struct AbstractGame {
    pub game: ParityGame,
    pub vertices: Vec<AbstractVertex>,
}

fn domain_name(c: &ColorTracking, d: &ColorStateSet) -> String {
    let items: Vec<String> = c.members(d).map(|cs| cs.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Builds the part of `𝒢(𝒜)` reachable from `v_I`.
///
/// `v_I` (Player I, color 0) moves to every member `r` with
/// `dom(r) = {q_I^𝒞}`; `r` (Player O, color 0) moves to `(r, q)` for
/// `q ∈ dom(r)`; `(r, (q, c))` (Player I, color `c`) moves to every member
/// `r'` with `dom(r') = r(q)`.
pub fn build_abstract_game(c: &ColorTracking, family: &BehaviorFamily) -> Result<AbstractGame> {
    let mut b = Builder {
        c,
        family,
        vertices: vec![AbstractVertex::Start],
        owner: vec![Player::I],
        color: vec![0],
        edges: vec![Vec::new()],
        member_vertex: HashMap::new(),
        queue: VecDeque::new(),
    };
    b.edges[0] = b.members_with_domain(&c.set_of([c.initial()]))?;
    while let Some((m, rv)) = b.queue.pop_front() {
        for (q, img) in family.members()[m].entries() {
            let pick = b.push(
                AbstractVertex::Pick { member: m, state: q },
                Player::I,
                c.color_state(q).accumulated,
            );
            b.edges[rv].push(pick);
            b.edges[pick] = b.members_with_domain(img)?;
        }
    }

    let labels = b
        .vertices
        .iter()
        .map(|v| match *v {
            AbstractVertex::Start => "v_I".to_string(),
            AbstractVertex::Behavior(m) => format!("r{m}"),
            AbstractVertex::Pick { member, state } => format!("(r{member},{})", c.color_state(state)),
        })
        .collect();
    let game = ParityGame::new(b.owner, b.color, b.edges, 0)?.with_labels(labels);
    Ok(AbstractGame {
        game,
        vertices: b.vertices,
    })
}

struct Builder<'a> {
    c: &'a ColorTracking,
    family: &'a BehaviorFamily,
    vertices: Vec<AbstractVertex>,
    owner: Vec<Player>,
    color: Vec<u32>,
    edges: Vec<Vec<usize>>,
    member_vertex: HashMap<usize, usize>,
    queue: VecDeque<(usize, usize)>,
}

impl Builder<'_> {
    fn push(&mut self, v: AbstractVertex, owner: Player, color: u32) -> usize {
        self.vertices.push(v);
        self.owner.push(owner);
        self.color.push(color);
        self.edges.push(Vec::new());
        self.vertices.len() - 1
    }

    /// Vertices of the members with domain `d`, created on first use.
    fn members_with_domain(&mut self, d: &ColorStateSet) -> Result<Vec<usize>> {
        let ids = self.family.with_domain(d);
        if ids.is_empty() {
            return Err(Error::FamilyIncomplete {
                domain: domain_name(self.c, d),
            });
        }
        let mut out = Vec::with_capacity(ids.len());
        for &m in ids {
            let v = match self.member_vertex.get(&m) {
                Some(&v) => v,
                None => {
                    let v = self.push(AbstractVertex::Behavior(m), Player::O, 0);
                    self.member_vertex.insert(m, v);
                    self.queue.push_back((m, v));
                    v
                }
            };
            out.push(v);
        }
        Ok(out)
    }
}
