//! Brute-force ground truth: the delay game with constant lookahead `d`
//! unrolled into an explicit parity game.
//!
//! A vertex is an automaton state `q` together with the buffer of input
//! letters Player I has supplied but Player O has not answered yet. Player I
//! moves while the buffer is shorter than `d` by appending a letter; with a
//! full buffer Player O picks an output `b`, pops the front letter `a` and
//! the automaton moves along `(a, b)`. Player-I vertices with `d - 1`
//! buffered letters are exactly those entered right after an automaton step
//! (plus, for `d = 1`, the initial vertex); they carry `Ω(q)`. All other
//! vertices carry the neutral color 0.

use std::collections::HashMap;

use crate::automaton::ops::{finite_to_reach, to_parity};
use crate::automaton::{Acceptance, Automaton, ProductLetter, State};
use crate::error::{Error, Result};
use crate::game::{solve, GameSolution, ParityGame, Player};

pub const DEFAULT_VERTEX_CAP: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub d: usize,
    pub vertex_cap: usize,
}

impl OracleConfig {
    pub fn new(d: usize) -> Self {
        assert!(d >= 1, "lookahead is at least 1");
        OracleConfig {
            d,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.vertex_cap = cap;
        self
    }
}

/// A vertex of the unrolled game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OracleVertex {
    pub q: State,
    pub buffer: Vec<usize>,
}

impl OracleVertex {
    pub fn turn(&self, d: usize) -> Player {
        if self.buffer.len() == d {
            Player::O
        } else {
            Player::I
        }
    }
}

#[derive(Clone, Debug)]
pub struct UnrolledGame {
    pub game: ParityGame,
    pub vertices: Vec<OracleVertex>,
    pub d: usize,
}

/// The parity automaton the oracle plays on: parity automata as given,
/// reachability and safety via [`to_parity`], finite-word conditions via
/// [`finite_to_reach`] first.
pub fn as_parity(a: &Automaton) -> Result<Automaton> {
    match a.acceptance() {
        Acceptance::Parity(_) => Ok(a.clone()),
        Acceptance::Reach(_) | Acceptance::Safety(_) => to_parity(a),
        Acceptance::FiniteReach(_) => to_parity(&finite_to_reach(a)?),
    }
}

/// Builds the game reachable from `(q_I, ε)`.
pub fn build_unrolled_game(a: &Automaton, cfg: OracleConfig) -> Result<UnrolledGame> {
    let Acceptance::Parity(colors) = a.acceptance() else {
        return Err(Error::NotParity);
    };
    if !a.letters().is_product() {
        return Err(Error::NotProduct);
    }
    a.require_deterministic()?;
    let d = cfg.d;
    let letters = a.letters();
    let inputs = letters.input().len();
    let outputs = letters.output_len();

    let mut vertices = vec![OracleVertex {
        q: a.initial(),
        buffer: Vec::new(),
    }];
    let mut index: HashMap<OracleVertex, usize> = HashMap::from([(vertices[0].clone(), 0)]);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < vertices.len() {
        let v = vertices[next].clone();
        next += 1;
        let succ: Vec<OracleVertex> = if v.buffer.len() < d {
            (0..inputs)
                .map(|x| {
                    let mut buffer = v.buffer.clone();
                    buffer.push(x);
                    OracleVertex { q: v.q, buffer }
                })
                .collect()
        } else {
            (0..outputs)
                .map(|b| {
                    let l = letters.letter(ProductLetter {
                        input: v.buffer[0],
                        output: b,
                    });
                    OracleVertex {
                        q: a.successor(v.q, l).expect("deterministic and complete"),
                        buffer: v.buffer[1..].to_vec(),
                    }
                })
                .collect()
        };
        let mut row = Vec::with_capacity(succ.len());
        for w in succ {
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    if vertices.len() >= cfg.vertex_cap {
                        return Err(Error::VertexCapExceeded { d, cap: cfg.vertex_cap });
                    }
                    let id = vertices.len();
                    index.insert(w.clone(), id);
                    vertices.push(w);
                    id
                }
            };
            row.push(id);
        }
        edges.push(row);
    }

    let owner = vertices.iter().map(|v| v.turn(d)).collect();
    let color = vertices
        .iter()
        .map(|v| if v.buffer.len() + 1 == d { colors[v.q] } else { 0 })
        .collect();
    let game = ParityGame::new(owner, color, edges, 0)?;
    Ok(UnrolledGame { game, vertices, d })
}

impl UnrolledGame {
    pub fn solve(&self) -> GameSolution {
        solve(&self.game)
    }

    /// Human-readable labels, for DOT dumps.
    pub fn labeled(&self, a: &Automaton) -> ParityGame {
        let input = a.letters().input();
        let labels = self
            .vertices
            .iter()
            .map(|v| {
                let buf: Vec<&str> = v.buffer.iter().map(|&x| input.symbol(x)).collect();
                format!("q{} [{}]", v.q, buf.join(" "))
            })
            .collect();
        self.game.clone().with_labels(labels)
    }
}

/// Winner of the delay game with constant lookahead `d`.
pub fn oracle_winner(a: &Automaton, cfg: OracleConfig) -> Result<Player> {
    let g = build_unrolled_game(a, cfg)?;
    Ok(g.solve().winner(g.game.initial()))
}

/// The smallest `d ≤ d_max` for which Player O wins, ascending from 1.
/// Hitting the vertex cap at some `d` is reported as
/// [`Error::VertexCapExceeded`]; Player I won every smaller `d`.
pub fn minimal_lookahead_search(a: &Automaton, d_max: usize, vertex_cap: usize) -> Result<Option<usize>> {
    for d in 1..=d_max {
        if oracle_winner(a, OracleConfig::new(d).with_cap(vertex_cap))? == Player::O {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
