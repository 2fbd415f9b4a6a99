//! Finite automata over plain or product alphabets with reachability, safety,
//! parity, or finite-word acceptance.
//!
//! Transition tables are dense: `delta[q][letter]` holds the sorted successor
//! set. A product letter `(a, b)` is stored at flat index `a * |Σ_O| + b`, so
//! all outputs for one input letter are adjacent.

pub mod format;
pub mod ops;
pub mod tracking;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use log::warn;

use crate::error::{Error, Result};
use crate::graph;

pub type State = usize;
/// Flat letter index, see [`Letters::letter`].
pub type Letter = usize;
pub type Color = u32;

/// A nonempty, ordered set of distinct symbols. The position of a symbol is
/// its letter index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.contains(|c: char| c.is_whitespace() || c == '|' || c == '#') {
                return Err(Error::Invalid(format!("illegal letter symbol {l:?}")));
            }
            if letters[..i].contains(l) {
                return Err(Error::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Letters `"1"`, ..., `"n"`.
    pub fn numbered(n: usize) -> Self {
        Alphabet::new((1..=n).map(|i| i.to_string())).expect("n >= 1")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.letters[index]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == symbol)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(String::as_str)
    }
}

/// A letter of `Σ_I × Σ_O`, given by its two component indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductLetter {
    pub input: usize,
    pub output: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letters {
    Plain(Alphabet),
    Product { input: Alphabet, output: Alphabet },
}

impl Letters {
    pub fn product(input: Alphabet, output: Alphabet) -> Self {
        Letters::Product { input, output }
    }

    /// Total number of letters.
    pub fn len(&self) -> usize {
        match self {
            Letters::Plain(a) => a.len(),
            Letters::Product { input, output } => input.len() * output.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_product(&self) -> bool {
        matches!(self, Letters::Product { .. })
    }

    /// The input alphabet; for plain alphabets this is the alphabet itself.
    pub fn input(&self) -> &Alphabet {
        match self {
            Letters::Plain(a) => a,
            Letters::Product { input, .. } => input,
        }
    }

    pub fn output(&self) -> Option<&Alphabet> {
        match self {
            Letters::Plain(_) => None,
            Letters::Product { output, .. } => Some(output),
        }
    }

    /// Number of output letters, 1 for plain alphabets.
    pub fn output_len(&self) -> usize {
        self.output().map_or(1, Alphabet::len)
    }

    /// Flat index of a product letter. Plain alphabets only accept output 0.
    pub fn letter(&self, p: ProductLetter) -> Letter {
        debug_assert!(p.input < self.input().len() && p.output < self.output_len());
        p.input * self.output_len() + p.output
    }

    pub fn split(&self, letter: Letter) -> ProductLetter {
        let m = self.output_len();
        ProductLetter {
            input: letter / m,
            output: letter % m,
        }
    }

    /// Display name, `in|out` for product letters.
    pub fn name(&self, letter: Letter) -> String {
        match self {
            Letters::Plain(a) => a.symbol(letter).to_string(),
            Letters::Product { input, output } => {
                let p = self.split(letter);
                format!("{}|{}", input.symbol(p.input), output.symbol(p.output))
            }
        }
    }

    pub fn parse_letter(&self, text: &str) -> Option<Letter> {
        match self {
            Letters::Plain(a) => a.index_of(text),
            Letters::Product { input, output } => {
                let (i, o) = text.split_once('|')?;
                Some(self.letter(ProductLetter {
                    input: input.index_of(i)?,
                    output: output.index_of(o)?,
                }))
            }
        }
    }
}

/// Acceptance condition. `FiniteReach` describes the finite language `L_*`
/// of an acyclic automaton; its ω-language is `L_* · Σ^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Acceptance {
    Reach(BTreeSet<State>),
    Safety(BTreeSet<State>),
    Parity(Vec<Color>),
    FiniteReach(BTreeSet<State>),
}

impl Acceptance {
    pub fn kind(&self) -> &'static str {
        match self {
            Acceptance::Reach(_) => "reach",
            Acceptance::Safety(_) => "safety",
            Acceptance::Parity(_) => "parity",
            Acceptance::FiniteReach(_) => "finite",
        }
    }

    pub fn accepting(&self) -> Option<&BTreeSet<State>> {
        match self {
            Acceptance::Reach(f) | Acceptance::Safety(f) | Acceptance::FiniteReach(f) => Some(f),
            Acceptance::Parity(_) => None,
        }
    }

    fn remap(&self, map: &[Option<State>]) -> Acceptance {
        let set = |f: &BTreeSet<State>| f.iter().filter_map(|&q| map[q]).collect();
        match self {
            Acceptance::Reach(f) => Acceptance::Reach(set(f)),
            Acceptance::Safety(f) => Acceptance::Safety(set(f)),
            Acceptance::FiniteReach(f) => Acceptance::FiniteReach(set(f)),
            Acceptance::Parity(colors) => {
                let mut out = vec![0; map.iter().flatten().count()];
                for (q, m) in map.iter().enumerate() {
                    if let Some(m) = m {
                        out[*m] = colors[q];
                    }
                }
                Acceptance::Parity(out)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    letters: Letters,
    initial: State,
    delta: Vec<Vec<Vec<State>>>,
    acceptance: Acceptance,
}

impl Automaton {
    /// Builds an automaton from a transition list. Missing transitions are
    /// allowed (see [`Automaton::is_complete`]); states are not renumbered.
    pub fn new<I>(
        letters: Letters,
        state_count: usize,
        initial: State,
        transitions: I,
        acceptance: Acceptance,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (State, Letter, State)>,
    {
        if state_count == 0 {
            return Err(Error::Invalid("an automaton needs at least one state".into()));
        }
        if initial >= state_count {
            return Err(Error::Invalid(format!("initial state {initial} out of range")));
        }
        let mut delta = vec![vec![Vec::new(); letters.len()]; state_count];
        for (q, l, p) in transitions {
            if q >= state_count || p >= state_count {
                return Err(Error::Invalid(format!("transition {q} -> {p} out of range")));
            }
            if l >= letters.len() {
                return Err(Error::Invalid(format!("letter index {l} out of range")));
            }
            delta[q][l].push(p);
        }
        for row in &mut delta {
            for succ in row.iter_mut() {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        let a = Automaton {
            letters,
            initial,
            delta,
            acceptance,
        };
        a.validate_acceptance()?;
        Ok(a)
    }

    fn validate_acceptance(&self) -> Result<()> {
        let n = self.state_count();
        match &self.acceptance {
            Acceptance::Parity(colors) => {
                if colors.len() != n {
                    return Err(Error::Invalid(format!("{} colors given for {n} states", colors.len())));
                }
            }
            Acceptance::Reach(f) | Acceptance::Safety(f) | Acceptance::FiniteReach(f) => {
                if let Some(&q) = f.iter().find(|&&q| q >= n) {
                    return Err(Error::Invalid(format!("accepting state {q} out of range")));
                }
            }
        }
        if let Acceptance::FiniteReach(_) = self.acceptance {
            self.check_acyclic()?;
        }
        Ok(())
    }

    pub fn letters(&self) -> &Letters {
        &self.letters
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    /// `Δ(q, l)`.
    pub fn run_step(&self, q: State, l: Letter) -> &[State] {
        &self.delta[q][l]
    }

    /// The unique successor, if `Δ(q, l)` is a singleton.
    pub fn successor(&self, q: State, l: Letter) -> Option<State> {
        match self.delta[q][l].as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    /// All transitions `(q, l, p)` in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(l, succ)| succ.iter().map(move |&p| (q, l, p)))
        })
    }

    pub fn first_missing(&self) -> Option<(State, Letter)> {
        self.delta
            .iter()
            .enumerate()
            .find_map(|(q, row)| row.iter().position(Vec::is_empty).map(|l| (q, l)))
    }

    pub fn is_complete(&self) -> bool {
        self.first_missing().is_none()
    }

    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(|s| s.len() == 1))
    }

    pub fn require_deterministic(&self) -> Result<()> {
        if let Some((q, l)) = self.first_missing() {
            return Err(Error::Incomplete {
                state: q,
                letter: self.letters.name(l),
            });
        }
        match self.delta.iter().position(|row| row.iter().any(|s| s.len() > 1)) {
            Some(state) => Err(Error::NotDeterministic { state }),
            None => Ok(()),
        }
    }

    pub fn require_complete(&self) -> Result<()> {
        match self.first_missing() {
            Some((q, l)) => Err(Error::Incomplete {
                state: q,
                letter: self.letters.name(l),
            }),
            None => Ok(()),
        }
    }

    pub fn color(&self, q: State) -> Option<Color> {
        match &self.acceptance {
            Acceptance::Parity(c) => Some(c[q]),
            _ => None,
        }
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.acceptance.accepting().is_some_and(|f| f.contains(&q))
    }

    /// Distinct colors in ascending order (empty unless parity).
    pub fn distinct_colors(&self) -> Vec<Color> {
        match &self.acceptance {
            Acceptance::Parity(c) => c.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
            _ => Vec::new(),
        }
    }

    pub fn with_acceptance(&self, acceptance: Acceptance) -> Result<Self> {
        let a = Automaton {
            acceptance,
            ..self.clone()
        };
        a.validate_acceptance()?;
        Ok(a)
    }

    /// Successor lists ignoring letters.
    pub(crate) fn adjacency(&self) -> Vec<Vec<State>> {
        self.delta
            .iter()
            .map(|row| {
                let mut s: Vec<State> = row.iter().flatten().copied().collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for &p in self.delta[q].iter().flatten() {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// States from which an accepting state is reachable. All false for
    /// parity automata.
    pub fn productive(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut prod = vec![false; n];
        let Some(f) = self.acceptance.accepting() else {
            return prod;
        };
        let mut preds = vec![Vec::new(); n];
        for (q, succ) in self.adjacency().into_iter().enumerate() {
            for p in succ {
                preds[p].push(q);
            }
        }
        let mut stack: Vec<State> = f.iter().copied().collect();
        for &q in f {
            prod[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !prod[p] {
                    prod[p] = true;
                    stack.push(p);
                }
            }
        }
        prod
    }

    /// Fails unless every state lying on a cycle is non-productive.
    pub fn check_acyclic(&self) -> Result<()> {
        let prod = self.productive();
        let adj: Vec<Vec<State>> = self
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
        match graph::cyclic_vertices(&adj).iter().position(|&c| c) {
            Some(state) => Err(Error::NotAcyclic { state }),
            None => Ok(()),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.check_acyclic().is_ok()
    }

    /// Finite-word acceptance `L_*`: some run on `word` ends in an accepting
    /// state. Always false for parity automata.
    pub fn accepts_finite(&self, word: &[Letter]) -> bool {
        let mut current = BTreeSet::from([self.initial]);
        for &l in word {
            current = current.iter().flat_map(|&q| self.delta[q][l].iter().copied()).collect();
        }
        current.iter().any(|&q| self.is_accepting(q))
    }

    /// Canonical form: states renumbered in breadth-first order from the
    /// initial state (letters ascending, successors ascending); unreachable
    /// states are dropped.
    pub fn canonical(&self) -> Automaton {
        let n = self.state_count();
        let mut map: Vec<Option<State>> = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.initial]);
        map[self.initial] = Some(0);
        order.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for &p in self.delta[q].iter().flatten() {
                if map[p].is_none() {
                    map[p] = Some(order.len());
                    order.push(p);
                    queue.push_back(p);
                }
            }
        }
        if order.len() < n {
            warn!("dropping {} unreachable state(s)", n - order.len());
        }
        let delta = order
            .iter()
            .map(|&q| {
                self.delta[q]
                    .iter()
                    .map(|succ| {
                        let mut s: Vec<State> = succ.iter().map(|&p| map[p].unwrap()).collect();
                        s.sort_unstable();
                        s
                    })
                    .collect()
            })
            .collect();
        Automaton {
            letters: self.letters.clone(),
            initial: 0,
            delta,
            acceptance: self.acceptance.remap(&map),
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::serialize(self))
    }
}
