//! Decision procedures for delay games with ω-regular winning conditions.
//!
//! Conditions are given as automata over pairs of input and output letters
//! (see [`automaton`]). The [`solve`] module decides who wins for some
//! constant lookahead and reports a sufficient one; [`oracle`] solves the
//! game for a fixed lookahead by brute force.

pub mod automaton;
pub mod behavior;
pub mod error;
pub mod game;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod solve;

pub use automaton::format::{parse_automaton, serialize};
pub use automaton::tracking::{color_tracking, ColorState, ColorStateSet, ColorTracking};
pub use automaton::{Acceptance, Alphabet, Automaton, Color, Letter, Letters, ProductLetter, State};
pub use error::{Error, Result};
pub use game::{GameSolution, ParityGame, Player};
pub use solve::{DelayResult, Method, SolveOptions};
