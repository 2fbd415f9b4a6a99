//! The color-tracking automaton `𝒞` over `Q × Ω(Q)` and the powerset
//! transition function of its projection.

use std::fmt;

use super::{Acceptance, Automaton, Color, Letters, ProductLetter, State};
use crate::error::{Error, Result};

/// A state of `𝒞`: a base state paired with the maximal color seen so far.
/// Ordered lexicographically by `(base, accumulated)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorState {
    pub base: State,
    pub accumulated: Color,
}

impl fmt::Display for ColorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.base, self.accumulated)
    }
}

/// A set of color states, stored as a bitset over their indices in `𝒞`.
/// Index order coincides with the lexicographic order on [`ColorState`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorStateSet {
    words: Box<[u64]>,
}

impl ColorStateSet {
    pub fn empty(universe: usize) -> Self {
        ColorStateSet {
            words: vec![0; universe.div_ceil(64).max(1)].into_boxed_slice(),
        }
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(index);
        s
    }

    pub fn insert(&mut self, index: usize) {
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        self.words.get(index / 64).is_some_and(|w| w & (1 << (index % 64)) != 0)
    }

    pub fn union_with(&mut self, other: &ColorStateSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &ColorStateSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(words: &[u64]) -> Self {
        ColorStateSet { words: words.into() }
    }
}

impl fmt::Debug for ColorStateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `𝒞` for a deterministic parity automaton `𝒜`, together with a
/// precomputed table of `δ_P` on singletons.
#[derive(Clone, Debug)]
pub struct ColorTracking {
    base: Automaton,
    palette: Vec<Color>,
    automaton: Automaton,
    post: Vec<ColorStateSet>,
}

/// Builds the color-tracking automaton:
/// `δ_𝒞((q, c), l) = (δ(q, l), max{c, Ω(δ(q, l))})`, initial state
/// `(q_I, Ω(q_I))`, and `Ω_𝒞(q, c) = c`.
pub fn color_tracking(a: &Automaton) -> Result<ColorTracking> {
    ColorTracking::new(a)
}

impl ColorTracking {
    pub fn new(a: &Automaton) -> Result<Self> {
        let Acceptance::Parity(colors) = a.acceptance() else {
            return Err(Error::NotParity);
        };
        a.require_deterministic()?;
        let palette = a.distinct_colors();
        let k = palette.len();
        let size = a.state_count() * k;
        let slot = |c: Color| palette.binary_search(&c).expect("color in palette");

        let letters = a.letters().len();
        let mut edges = Vec::with_capacity(size * letters);
        for q in 0..a.state_count() {
            for (ci, &c) in palette.iter().enumerate() {
                for l in 0..letters {
                    let p = a.successor(q, l).expect("deterministic");
                    edges.push((q * k + ci, l, p * k + slot(c.max(colors[p]))));
                }
            }
        }
        let tracked_colors = (0..size).map(|i| palette[i % k]).collect();
        let automaton = Automaton::new(
            a.letters().clone(),
            size,
            a.initial() * k + slot(colors[a.initial()]),
            edges,
            Acceptance::Parity(tracked_colors),
        )?;

        let inputs = a.letters().input().len();
        let outputs = a.letters().output_len();
        let mut post = Vec::with_capacity(size * inputs);
        for s in 0..size {
            for i in 0..inputs {
                let mut set = ColorStateSet::empty(size);
                for o in 0..outputs {
                    let l = a.letters().letter(ProductLetter { input: i, output: o });
                    set.insert(automaton.successor(s, l).expect("deterministic"));
                }
                post.push(set);
            }
        }

        Ok(ColorTracking {
            base: a.clone(),
            palette,
            automaton,
            post,
        })
    }

    /// `n = |Q × Ω(Q)|`.
    pub fn size(&self) -> usize {
        self.automaton.state_count()
    }

    pub fn base(&self) -> &Automaton {
        &self.base
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn letters(&self) -> &Letters {
        self.base.letters()
    }

    pub fn input_len(&self) -> usize {
        self.base.letters().input().len()
    }

    /// Distinct colors of `𝒜`, ascending.
    pub fn palette(&self) -> &[Color] {
        &self.palette
    }

    pub fn index(&self, cs: ColorState) -> usize {
        let ci = self
            .palette
            .binary_search(&cs.accumulated)
            .expect("accumulated color must be a color of the automaton");
        cs.base * self.palette.len() + ci
    }

    pub fn color_state(&self, index: usize) -> ColorState {
        let k = self.palette.len();
        ColorState {
            base: index / k,
            accumulated: self.palette[index % k],
        }
    }

    pub fn initial(&self) -> ColorState {
        self.color_state(self.automaton.initial())
    }

    /// `(q, Ω(q))`.
    pub fn reset(&self, base: State) -> ColorState {
        ColorState {
            base,
            accumulated: self.base.color(base).expect("parity automaton"),
        }
    }

    pub fn step(&self, cs: ColorState, letter: ProductLetter) -> ColorState {
        let l = self.letters().letter(letter);
        self.color_state(self.automaton.successor(self.index(cs), l).expect("deterministic"))
    }

    pub fn set_of<I: IntoIterator<Item = ColorState>>(&self, states: I) -> ColorStateSet {
        let mut s = ColorStateSet::empty(self.size());
        for cs in states {
            s.insert(self.index(cs));
        }
        s
    }

    pub fn members<'a>(&'a self, set: &'a ColorStateSet) -> impl Iterator<Item = ColorState> + 'a {
        set.iter().map(|i| self.color_state(i))
    }

    /// `δ_P(S, a) = ⋃_{q ∈ S} ⋃_{b ∈ Σ_O} δ_𝒞(q, (a, b))`.
    pub fn powerset_step(&self, set: &ColorStateSet, input: usize) -> ColorStateSet {
        let mut out = ColorStateSet::empty(self.size());
        let inputs = self.input_len();
        for s in set.iter() {
            out.union_with(&self.post[s * inputs + input]);
        }
        out
    }

    /// `δ_P^*(S, w)`.
    pub fn powerset_run(&self, set: &ColorStateSet, word: &[usize]) -> ColorStateSet {
        word.iter().fold(set.clone(), |s, &a| self.powerset_step(&s, a))
    }
}

/// Free-function form of [`ColorTracking::powerset_step`].
pub fn powerset_step(c: &ColorTracking, set: &ColorStateSet, input: usize) -> ColorStateSet {
    c.powerset_step(set, input)
}
