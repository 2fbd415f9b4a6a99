use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: state {state} does not exist (automaton has {count} states)")]
    DanglingState { line: usize, state: usize, count: usize },

    #[error("line {line}: duplicate transition for state {state} on letter {letter} in a deterministic automaton")]
    DuplicateTransition { line: usize, state: usize, letter: String },

    #[error("alphabet must not be empty")]
    EmptyAlphabet,

    #[error("letter {0:?} occurs twice in the alphabet")]
    DuplicateLetter(String),

    #[error("incomplete at state {state}: no transition on letter {letter}")]
    Incomplete { state: usize, letter: String },

    #[error("invalid automaton: {0}")]
    Invalid(String),

    #[error("state {state} is productive and lies on a cycle, so the automaton is not acyclic")]
    NotAcyclic { state: usize },

    #[error("cannot complete a reachability automaton without changing its language")]
    CompletionUnsound,

    #[error("{operation} does not support {found} acceptance")]
    UnsupportedAcceptance {
        operation: &'static str,
        found: &'static str,
    },

    #[error("automaton is not deterministic (state {state} has several successors)")]
    NotDeterministic { state: usize },

    #[error("automaton does not have parity acceptance")]
    NotParity,

    #[error("automaton must be over a product alphabet")]
    NotProduct,

    #[error("{what} exceeded the budget of {cap} states")]
    StateBudgetExceeded { what: &'static str, cap: usize },

    #[error("unrolled game for lookahead {d} exceeds the vertex cap of {cap}")]
    VertexCapExceeded { d: usize, cap: usize },

    #[error("behavior function has only finitely many witnesses")]
    NotInFamily,

    #[error("no family member with domain {domain}")]
    FamilyIncomplete { domain: String },

    #[error("player O does not win this game, so there is no winning lookup table")]
    NotWinnable,
}

impl Error {
    /// True for errors caused by an exhausted budget rather than by bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::StateBudgetExceeded { .. } | Error::VertexCapExceeded { .. }
        )
    }
}
