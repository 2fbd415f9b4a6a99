//! Finite two-player max-parity games.
//!
//! Player O wins a play iff the largest color seen infinitely often is even.

mod abstract_game;
mod zielonka;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automaton::Color;
use crate::error::{Error, Result};

pub use abstract_game::{build_abstract_game, AbstractGame, AbstractVertex};
pub use zielonka::solve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    I,
    O,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::I => Player::O,
            Player::O => Player::I,
        }
    }

    /// The player who wins if `color` is the maximal color seen infinitely
    /// often.
    pub fn favored_by(color: Color) -> Player {
        if color.is_multiple_of(2) {
            Player::O
        } else {
            Player::I
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    color: Vec<Color>,
    edges: Vec<Vec<usize>>,
    initial: usize,
    labels: Option<Vec<String>>,
}

impl ParityGame {
    /// Successor lists are sorted and deduplicated. Every vertex needs at
    /// least one successor.
    pub fn new(owner: Vec<Player>, color: Vec<Color>, edges: Vec<Vec<usize>>, initial: usize) -> Result<Self> {
        let n = owner.len();
        if color.len() != n || edges.len() != n {
            return Err(Error::Invalid("owner, color and edge tables differ in length".into()));
        }
        if initial >= n {
            return Err(Error::Invalid(format!("initial vertex {initial} out of range")));
        }
        let mut edges = edges;
        for (v, succ) in edges.iter_mut().enumerate() {
            succ.sort_unstable();
            succ.dedup();
            if succ.is_empty() {
                return Err(Error::Invalid(format!("vertex {v} has no successor")));
            }
            if let Some(&w) = succ.last().filter(|&&w| w >= n) {
                return Err(Error::Invalid(format!("edge {v} -> {w} out of range")));
            }
        }
        Ok(ParityGame {
            owner,
            color,
            edges,
            initial,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = Some(labels);
        self
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn color(&self, v: usize) -> Color {
        self.color[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.edges[v]
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// The vertex label, or its index when the game is unlabeled.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Graphviz rendering. Player O vertices are ellipses, Player I vertices
    /// boxes; the initial vertex is drawn bold.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph game {\n");
        for v in 0..self.len() {
            let shape = match self.owner[v] {
                Player::O => "ellipse",
                Player::I => "box",
            };
            let style = if v == self.initial { ", style=bold" } else { "" };
            let label = self.label(v).replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(
                out,
                "  v{v} [shape={shape}{style}, label=\"{label}\\n{}\"];",
                self.color[v]
            );
        }
        for (v, succ) in self.edges.iter().enumerate() {
            for w in succ {
                let _ = writeln!(out, "  v{v} -> v{w};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Winning regions and positional winning strategies. `strategy(v)` is set
/// exactly for vertices owned by their winner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSolution {
    winner: Vec<Player>,
    strategy: Vec<Option<usize>>,
}

impl GameSolution {
    pub(crate) fn new(winner: Vec<Player>, strategy: Vec<Option<usize>>) -> Self {
        GameSolution { winner, strategy }
    }

    pub fn winner(&self, v: usize) -> Player {
        self.winner[v]
    }

    pub fn winners(&self) -> &[Player] {
        &self.winner
    }

    pub fn strategy(&self, v: usize) -> Option<usize> {
        self.strategy[v]
    }

    pub fn region(&self, p: Player) -> impl Iterator<Item = usize> + '_ {
        (0..self.winner.len()).filter(move |&v| self.winner[v] == p)
    }
}

/// Winner from vertex `v` of `g`, given `sol = solve(g)`.
pub fn winner_from(g: &ParityGame, sol: &GameSolution, v: usize) -> Player {
    assert_eq!(g.len(), sol.winner.len(), "solution belongs to another game");
    sol.winner(v)
}
