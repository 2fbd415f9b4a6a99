//! Automaton and word families used as fixtures and lower-bound witnesses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Acceptance, Alphabet, Automaton, Color, Letters, ProductLetter, State};
use crate::error::{Error, Result};

/// The ♯ letter of the safety bad-pair family.
pub const SHARP: &str = "♯";

/// `w_1 = 1`, `w_m = w_{m-1} m w_{m-1}`, as letters `1..=n`.
pub fn gen_w_word(n: usize) -> Vec<usize> {
    assert!(n >= 1);
    let mut w = vec![1];
    for m in 2..=n {
        let mut next = w.clone();
        next.push(m);
        next.extend_from_slice(&w);
        w = next;
    }
    w
}

/// Whether `word` (letters as numbers) contains two occurrences of `j` with
/// no strictly larger letter in between.
pub fn has_bad_pair(word: &[usize], j: usize) -> bool {
    let mut open = false;
    for &x in word {
        if x == j {
            if open {
                return true;
            }
            open = true;
        } else if x > j {
            open = false;
        }
    }
    false
}

/// Transitions for every product letter whose input is `input`.
fn on_input(letters: &Letters, q: State, input: usize, p: State) -> impl Iterator<Item = (State, usize, State)> + '_ {
    (0..letters.output_len()).map(move |o| (q, letters.letter(ProductLetter { input, output: o }), p))
}

/// States of one gadget, offset by `base`: `A = base`, `B = base + 1`,
/// `C = base + 2`, and `D = base + 3` when the ♯ letter exists.
///
/// Letters are `1..=n` at indices `0..n`; ♯, if present, is index `n`.
fn gadget_transitions(letters: &Letters, n: usize, base: State, j: usize, sharp: bool) -> Vec<(State, usize, State)> {
    let (a, b, c, d) = (base, base + 1, base + 2, base + 3);
    let mut t = Vec::new();
    for x in 1..=n {
        let i = x - 1;
        t.extend(on_input(letters, a, i, if x == j { b } else { a }));
        let from_b = match x.cmp(&j) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => c,
            std::cmp::Ordering::Greater => a,
        };
        t.extend(on_input(letters, b, i, from_b));
    }
    if sharp {
        t.extend(on_input(letters, a, n, d));
        t.extend(on_input(letters, b, n, d));
        for x in 0..=n {
            t.extend(on_input(letters, d, x, d));
        }
    }
    for x in 0..letters.input().len() {
        t.extend(on_input(letters, c, x, c));
    }
    t
}

/// The gadget `B_j` on its own: a reachability automaton over `1..=n` that
/// accepts exactly the words containing a bad `j`-pair.
pub fn gadget_b(n: usize, j: usize) -> Automaton {
    assert!((1..=n).contains(&j));
    let letters = Letters::Plain(Alphabet::numbered(n));
    let t = gadget_transitions(&letters, n, 0, j, false);
    Automaton::new(letters, 3, 0, t, Acceptance::Reach(BTreeSet::from([2]))).expect("well-formed gadget")
}

fn require_badpair_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Invalid(format!("bad-pair families need n > 1, got {n}")));
    }
    Ok(())
}

/// `𝒜_n`: Player O names `j` with her first letter; the remaining input must
/// contain a bad `j`-pair. The first input letter is ignored. `1 + 3n`
/// states.
pub fn gen_badpair_reach(n: usize) -> Result<Automaton> {
    require_badpair_n(n)?;
    let alpha = Alphabet::numbered(n);
    let letters = Letters::product(alpha.clone(), alpha);
    let mut t = Vec::new();
    let mut accepting = BTreeSet::new();
    for j in 1..=n {
        let base = 1 + 3 * (j - 1);
        for x in 0..n {
            t.push((
                0,
                letters.letter(ProductLetter {
                    input: x,
                    output: j - 1,
                }),
                base,
            ));
        }
        t.extend(gadget_transitions(&letters, n, base, j, false));
        accepting.insert(base + 2);
    }
    Ok(Automaton::new(letters, 1 + 3 * n, 0, t, Acceptance::Reach(accepting))?.canonical())
}

/// `𝒜_n'`: the safety variant over `1..=n, ♯`. Gadgets `B_j'` reject once ♯
/// appears before a bad `j`-pair; `B_♯'` rejects two `n`s before the first
/// ♯. `4n + 5` states.
pub fn gen_badpair_safety(n: usize) -> Result<Automaton> {
    require_badpair_n(n)?;
    let alpha = Alphabet::new((1..=n).map(|i| i.to_string()).chain([SHARP.to_string()]))?;
    let letters = Letters::product(alpha.clone(), alpha);
    let sharp = n;
    let mut t = Vec::new();
    let mut accepting = BTreeSet::from([0]);
    for j in 1..=n {
        let base = 1 + 4 * (j - 1);
        for x in 0..=n {
            t.push((
                0,
                letters.letter(ProductLetter {
                    input: x,
                    output: j - 1,
                }),
                base,
            ));
        }
        t.extend(gadget_transitions(&letters, n, base, j, true));
        accepting.extend([base, base + 1, base + 2]);
    }

    // B_♯': A = s, B = s+1, C = s+2 (rejecting), D = s+3 (accepting)
    let s = 1 + 4 * n;
    for x in 0..=n {
        t.push((
            0,
            letters.letter(ProductLetter {
                input: x,
                output: sharp,
            }),
            s,
        ));
    }
    for x in 0..n {
        t.extend(on_input(&letters, s, x, if x == n - 1 { s + 1 } else { s }));
        t.extend(on_input(&letters, s + 1, x, if x == n - 1 { s + 2 } else { s + 1 }));
    }
    t.extend(on_input(&letters, s, sharp, s + 3));
    t.extend(on_input(&letters, s + 1, sharp, s + 3));
    for x in 0..=n {
        t.extend(on_input(&letters, s + 2, x, s + 2));
        t.extend(on_input(&letters, s + 3, x, s + 3));
    }
    accepting.extend([s, s + 1, s + 3]);
    Ok(Automaton::new(letters, 4 * n + 5, 0, t, Acceptance::Safety(accepting))?.canonical())
}

/// `L_n`: words of length `n + 1` over `{a,b} × {a,b}` with `β(0) = α(n)`,
/// as an acyclic automaton of depth `n + 1` with `2n + 3` states.
pub fn gen_clopen(n: usize) -> Automaton {
    let alpha = Alphabet::new(["a", "b"]).expect("alphabet");
    let letters = Letters::product(alpha.clone(), alpha);
    // q0 = 0, p_{i,x} = 1 + 2(i-1) + x for i in 1..=n, accept, sink
    let accept = 2 * n + 1;
    let sink = 2 * n + 2;
    let p = |i: usize, x: usize| 1 + 2 * (i - 1) + x;
    let mut t = Vec::new();
    for l in 0..letters.len() {
        let ProductLetter { input, output } = letters.split(l);
        let check = |x: usize| if input == x { accept } else { sink };
        t.push((0, l, if n == 0 { check(output) } else { p(1, output) }));
        for i in 1..=n {
            for x in 0..2 {
                t.push((p(i, x), l, if i < n { p(i + 1, x) } else { check(x) }));
            }
        }
        t.push((accept, l, sink));
        t.push((sink, l, sink));
    }
    Automaton::new(
        letters,
        2 * n + 3,
        0,
        t,
        Acceptance::FiniteReach(BTreeSet::from([accept])),
    )
    .expect("acyclic by construction")
    .canonical()
}

/// `β(i) = α(i + k)` for all `i`, over `{a,b,c}`. States are the queues of
/// outputs still to be matched (length `≤ k`) plus a rejecting sink.
pub fn gen_shift(k: usize) -> Result<Automaton> {
    if k < 1 {
        return Err(Error::Invalid("shift distance must be at least 1".into()));
    }
    let alpha = Alphabet::new(["a", "b", "c"])?;
    let letters = Letters::product(alpha.clone(), alpha);
    let mut queues: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<Vec<usize>, State> = HashMap::from([(Vec::new(), 0)]);
    // (state, letter, target queue or None for the sink)
    let mut edges: Vec<(State, usize, Option<State>)> = Vec::new();
    let mut next = 0;
    while next < queues.len() {
        let q = queues[next].clone();
        for l in 0..letters.len() {
            let ProductLetter { input, output } = letters.split(l);
            let target = if q.len() < k {
                Some([&q[..], &[output]].concat())
            } else if q[0] == input {
                Some([&q[1..], &[output]].concat())
            } else {
                None
            };
            let id = target.map(|r| {
                *index.entry(r.clone()).or_insert_with(|| {
                    queues.push(r);
                    queues.len() - 1
                })
            });
            edges.push((next, l, id));
        }
        next += 1;
    }
    let sink = queues.len();
    let mut t: Vec<(State, usize, State)> = edges.into_iter().map(|(q, l, p)| (q, l, p.unwrap_or(sink))).collect();
    t.extend((0..letters.len()).map(|l| (sink, l, sink)));
    let accepting = (0..sink).collect();
    Ok(Automaton::new(letters, sink + 1, 0, t, Acceptance::Safety(accepting))?.canonical())
}

/// `β(0)` must equal the first input letter other than `a` (if any), over
/// `{a,b,c} × {b,c}`.
pub fn gen_first_non_a() -> Automaton {
    let letters = Letters::product(
        Alphabet::new(["a", "b", "c"]).expect("alphabet"),
        Alphabet::new(["b", "c"]).expect("alphabet"),
    );
    // 0 initial, 1 wait for b, 2 wait for c, 3 ok, 4 reject
    let mut t = Vec::new();
    for l in 0..letters.len() {
        let ProductLetter { input, output } = letters.split(l);
        let guessed = output + 1;
        t.push((
            0,
            l,
            if input == 0 {
                1 + output
            } else if input == guessed {
                3
            } else {
                4
            },
        ));
        for (w, want) in [(1, 1), (2, 2)] {
            t.push((
                w,
                l,
                if input == 0 {
                    w
                } else if input == want {
                    3
                } else {
                    4
                },
            ));
        }
        t.push((3, l, 3));
        t.push((4, l, 4));
    }
    Automaton::new(letters, 5, 0, t, Acceptance::Safety(BTreeSet::from([0, 1, 2, 3]))).expect("well-formed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    BadpairReach,
    BadpairSafety,
    Clopen,
    Shift,
    FirstNonA,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::BadpairReach,
        FamilyKind::BadpairSafety,
        FamilyKind::Clopen,
        FamilyKind::Shift,
        FamilyKind::FirstNonA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::BadpairReach => "badpair-reach",
            FamilyKind::BadpairSafety => "badpair-safety",
            FamilyKind::Clopen => "clopen",
            FamilyKind::Shift => "shift",
            FamilyKind::FirstNonA => "first-non-a",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: FamilyKind,
    pub n: usize,
}

/// Generates a family member. `first-non-a` ignores `n`.
pub fn generate(params: FamilyParams) -> Result<Automaton> {
    match params.family {
        FamilyKind::BadpairReach => gen_badpair_reach(params.n),
        FamilyKind::BadpairSafety => gen_badpair_safety(params.n),
        FamilyKind::Clopen => Ok(gen_clopen(params.n)),
        FamilyKind::Shift => gen_shift(params.n),
        FamilyKind::FirstNonA => Ok(gen_first_non_a()),
    }
}

/// Bounds for [`gen_random`]. Every bound is at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomLimits {
    pub max_states: usize,
    /// Colors are drawn from `0..colors`.
    pub colors: u32,
    pub inputs: usize,
    pub outputs: usize,
}

impl Default for RandomLimits {
    fn default() -> Self {
        RandomLimits {
            max_states: 3,
            colors: 2,
            inputs: 2,
            outputs: 2,
        }
    }
}

fn product_letters(inputs: usize, outputs: usize) -> Letters {
    let names =
        |n: usize, base: u8| Alphabet::new((0..n).map(|i| ((base + i as u8) as char).to_string())).expect("alphabet");
    Letters::product(names(inputs, b'a'), names(outputs, b'x'))
}

fn random_structure(rng: &mut ChaCha8Rng, limits: &RandomLimits) -> (Letters, usize, Vec<(State, usize, State)>) {
    let letters = product_letters(limits.inputs.clamp(1, 26), limits.outputs.clamp(1, 26));
    let n = rng.gen_range(1..=limits.max_states.max(1));
    let t = (0..n)
        .flat_map(|q| (0..letters.len()).map(move |l| (q, l)))
        .map(|(q, l)| (q, l, rng.gen_range(0..n)))
        .collect();
    (letters, n, t)
}

/// A deterministic complete parity automaton, reproducible from `seed`.
pub fn gen_random(seed: u64, limits: RandomLimits) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (letters, n, t) = random_structure(&mut rng, &limits);
    let colors: Vec<Color> = (0..n).map(|_| rng.gen_range(0..limits.colors.max(1))).collect();
    Automaton::new(letters, n, 0, t, Acceptance::Parity(colors))
        .expect("well-formed")
        .canonical()
}

/// A deterministic complete automaton with reachability (`reach = true`) or
/// safety acceptance and a random accepting set.
pub fn gen_random_reach_safety(seed: u64, limits: RandomLimits, reach: bool) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (letters, n, t) = random_structure(&mut rng, &limits);
    let f: BTreeSet<State> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let acc = if reach {
        Acceptance::Reach(f)
    } else {
        Acceptance::Safety(f)
    };
    Automaton::new(letters, n, 0, t, acc).expect("well-formed").canonical()
}

/// A deterministic complete acyclic automaton of depth at most `max_depth`
/// over binary alphabets: layered states, a rejecting sink, and random
/// accepting states.
pub fn gen_random_acyclic(seed: u64, max_depth: usize) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = product_letters(2, 2);
    let layers = rng.gen_range(1..=max_depth + 1);
    let mut layer_of = Vec::new();
    for i in 0..layers {
        let width = if i == 0 { 1 } else { rng.gen_range(1..=3) };
        layer_of.extend(std::iter::repeat_n(i, width));
    }
    let n = layer_of.len();
    let sink = n;
    let first_of = |i: usize| layer_of.iter().position(|&x| x == i);
    let mut t = Vec::new();
    for q in 0..n {
        let i = layer_of[q];
        let next: Vec<State> = match first_of(i + 1) {
            Some(start) => (start..n).take_while(|&p| layer_of[p] == i + 1).collect(),
            None => Vec::new(),
        };
        for l in 0..letters.len() {
            let target = if next.is_empty() || rng.gen_bool(0.2) {
                sink
            } else {
                next[rng.gen_range(0..next.len())]
            };
            t.push((q, l, target));
        }
    }
    t.extend((0..letters.len()).map(|l| (sink, l, sink)));
    let f: BTreeSet<State> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    Automaton::new(letters, n + 1, 0, t, Acceptance::FiniteReach(f))
        .expect("layered automata are acyclic")
        .canonical()
}
