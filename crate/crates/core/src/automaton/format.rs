//! The line-oriented `.aut` text format.
//!
//! ```text
//! alphabet_in: a b c
//! alphabet_out: x y          # omit for single-alphabet automata
//! states: 4
//! initial: 0
//! acceptance: parity | reach | safety | finite
//! colors: 0 1 2 0            # parity only, one per state
//! accepting: 1 3             # reach/safety/finite only
//! trans: 0 a|x -> 1          # one line per nondeterministic branch
//! ```
//!
//! Two optional headers tighten validation: `complete: required` rejects
//! files with a missing `(state, letter)` row and `deterministic: required`
//! rejects a second transition line for the same `(state, letter)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write;

use super::{Acceptance, Alphabet, Automaton, Letters, State};
use crate::error::{Error, Result};

/// Parses a `.aut` document and returns the automaton in canonical form.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let mut headers: HashMap<&str, (usize, &str)> = HashMap::new();
    let mut trans: Vec<(usize, &str)> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(syntax(line_no, format!("expected `key: value`, found {line:?}")));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "trans" => trans.push((line_no, value)),
            "alphabet_in" | "alphabet_out" | "states" | "initial" | "acceptance" | "colors" | "accepting"
            | "complete" | "deterministic" => {
                if headers.insert(key, (line_no, value)).is_some() {
                    return Err(syntax(line_no, format!("`{key}` given twice")));
                }
            }
            _ => return Err(syntax(line_no, format!("unknown key `{key}`"))),
        }
    }

    let required = |key: &str| {
        headers
            .get(key)
            .copied()
            .ok_or_else(|| syntax(last_line, format!("missing `{key}`")))
    };
    let flag = |key: &str| -> Result<bool> {
        match headers.get(key) {
            None => Ok(false),
            Some((_, "required")) => Ok(true),
            Some((_, "optional")) => Ok(false),
            Some((l, v)) => Err(syntax(
                *l,
                format!("`{key}` must be `required` or `optional`, found {v:?}"),
            )),
        }
    };

    let alphabet = |key: &str| -> Result<Option<Alphabet>> {
        match headers.get(key) {
            None => Ok(None),
            Some((l, v)) => Alphabet::new(v.split_whitespace()).map(Some).map_err(|e| match e {
                Error::EmptyAlphabet => Error::EmptyAlphabet,
                other => syntax(*l, other.to_string()),
            }),
        }
    };
    let input = alphabet("alphabet_in")?.ok_or_else(|| syntax(last_line, "missing `alphabet_in`".into()))?;
    let letters = match alphabet("alphabet_out")? {
        Some(output) => Letters::product(input, output),
        None => Letters::Plain(input),
    };

    let (l, v) = required("states")?;
    let count: usize = parse_num(l, v)?;
    if count == 0 {
        return Err(syntax(l, "an automaton needs at least one state".into()));
    }
    let state = |line: usize, text: &str| -> Result<State> {
        let q: usize = parse_num(line, text)?;
        if q >= count {
            return Err(Error::DanglingState { line, state: q, count });
        }
        Ok(q)
    };
    let (l, v) = required("initial")?;
    let initial = state(l, v)?;

    let (acc_line, kind) = required("acceptance")?;
    let state_list = |key: &str| -> Result<BTreeSet<State>> {
        let (l, v) = headers
            .get(key)
            .copied()
            .ok_or_else(|| syntax(acc_line, format!("{kind} acceptance needs `{key}`")))?;
        v.split_whitespace().map(|t| state(l, t)).collect()
    };
    let acceptance = match kind {
        "parity" => {
            let (l, v) = headers
                .get("colors")
                .copied()
                .ok_or_else(|| syntax(acc_line, "parity acceptance needs `colors`".into()))?;
            let colors = v
                .split_whitespace()
                .map(|t| parse_num(l, t))
                .collect::<Result<Vec<u32>>>()?;
            if colors.len() != count {
                return Err(syntax(l, format!("{} colors given for {count} states", colors.len())));
            }
            Acceptance::Parity(colors)
        }
        "reach" => Acceptance::Reach(state_list("accepting")?),
        "safety" => Acceptance::Safety(state_list("accepting")?),
        "finite" => Acceptance::FiniteReach(state_list("accepting")?),
        other => return Err(syntax(acc_line, format!("unknown acceptance {other:?}"))),
    };
    if let Some((l, _)) = match acceptance {
        Acceptance::Parity(_) => headers.get("accepting"),
        _ => headers.get("colors"),
    } {
        return Err(syntax(*l, format!("key not allowed for {kind} acceptance")));
    }

    let deterministic = flag("deterministic")?;
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(trans.len());
    for (line, value) in trans {
        let (lhs, rhs) = value
            .split_once("->")
            .ok_or_else(|| syntax(line, "expected `<state> <letter> -> <state>`".into()))?;
        let mut parts = lhs.split_whitespace();
        let (Some(src), Some(letter), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(syntax(line, "expected `<state> <letter> -> <state>`".into()));
        };
        let mut targets = rhs.split_whitespace();
        let (Some(dst), None) = (targets.next(), targets.next()) else {
            return Err(syntax(line, "exactly one target state per transition line".into()));
        };
        let q = state(line, src)?;
        let p = state(line, dst)?;
        let l = letters
            .parse_letter(letter)
            .ok_or_else(|| syntax(line, format!("unknown letter {letter:?}")))?;
        if deterministic && !seen.insert((q, l)) {
            return Err(Error::DuplicateTransition {
                line,
                state: q,
                letter: letter.to_string(),
            });
        }
        edges.push((q, l, p));
    }

    let a = Automaton::new(letters, count, initial, edges, acceptance).map_err(|e| match e {
        Error::Invalid(m) => syntax(acc_line, m),
        other => other,
    })?;
    if flag("complete")? {
        a.require_complete()?;
    }
    Ok(a.canonical())
}

/// Serializes the canonical form of `a`.
pub fn serialize(a: &Automaton) -> String {
    let a = a.canonical();
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(" ");
    let letters = a.letters();
    writeln!(
        out,
        "alphabet_in: {}",
        join(&mut letters.input().symbols().map(String::from))
    )
    .unwrap();
    if let Some(output) = letters.output() {
        writeln!(out, "alphabet_out: {}", join(&mut output.symbols().map(String::from))).unwrap();
    }
    writeln!(out, "states: {}", a.state_count()).unwrap();
    writeln!(out, "initial: {}", a.initial()).unwrap();
    writeln!(out, "acceptance: {}", a.acceptance().kind()).unwrap();
    match a.acceptance() {
        Acceptance::Parity(colors) => {
            writeln!(out, "colors: {}", join(&mut colors.iter().map(u32::to_string))).unwrap();
        }
        other => {
            let f = other.accepting().expect("set-based acceptance");
            let list = join(&mut f.iter().map(usize::to_string));
            if list.is_empty() {
                writeln!(out, "accepting:").unwrap();
            } else {
                writeln!(out, "accepting: {list}").unwrap();
            }
        }
    }
    for (q, l, p) in a.transitions() {
        writeln!(out, "trans: {q} {} -> {p}", letters.name(l)).unwrap();
    }
    out
}

fn syntax(line: usize, message: String) -> Error {
    Error::Syntax { line, message }
}

fn parse_num<T: std::str::FromStr>(line: usize, text: &str) -> Result<T> {
    text.parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, found {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_STATE: &str = "\
alphabet_in: a
alphabet_out: x y
states: 1
initial: 0
acceptance: parity
colors: 0
trans: 0 a|x -> 0
trans: 0 a|y -> 0
";

    #[test]
    fn smallest_complete_automaton() {
        let a = parse_automaton(ONE_STATE).unwrap();
        assert_eq!(a.state_count(), 1);
        assert!(a.is_deterministic());
        assert!(a.is_complete());
        assert_eq!(serialize(&a), ONE_STATE);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!(
            "# header\n\n{}# trailing\n",
            ONE_STATE.replace("colors: 0", "colors: 0   # c")
        );
        assert_eq!(parse_automaton(&text).unwrap(), parse_automaton(ONE_STATE).unwrap());
    }

    #[test]
    fn incomplete_when_completeness_required() {
        let text = "\
alphabet_in: a b
states: 2
initial: 0
acceptance: safety
accepting: 0 1
complete: required
trans: 0 a -> 1
trans: 0 b -> 0
trans: 1 a -> 1
";
        assert_eq!(
            parse_automaton(text).unwrap_err(),
            Error::Incomplete {
                state: 1,
                letter: "b".into()
            }
        );
        // without the declaration the automaton is accepted but flagged
        let a = parse_automaton(&text.replace("complete: required\n", "")).unwrap();
        assert!(!a.is_complete());
    }

    #[test]
    fn gadget_for_j_equal_one() {
        // three-state bad-pair detector for j = 1 over {1, 2}
        let text = "\
alphabet_in: 1 2
states: 3
initial: 0
acceptance: reach
accepting: 2
trans: 0 1 -> 1
trans: 0 2 -> 0
trans: 1 1 -> 2
trans: 1 2 -> 0
trans: 2 1 -> 2
trans: 2 2 -> 2
";
        let a = parse_automaton(text).unwrap();
        assert_eq!(a.state_count(), 3);
        assert!(matches!(a.acceptance(), Acceptance::Reach(f) if f.len() == 1));
        assert!(a.is_deterministic());
    }

    #[test]
    fn error_cases() {
        let dangling = ONE_STATE.replace("trans: 0 a|y -> 0", "trans: 0 a|y -> 3");
        assert_eq!(
            parse_automaton(&dangling).unwrap_err(),
            Error::DanglingState {
                line: 8,
                state: 3,
                count: 1
            }
        );

        let dup = format!("{ONE_STATE}deterministic: required\ntrans: 0 a|y -> 0\n");
        assert!(matches!(
            parse_automaton(&dup).unwrap_err(),
            Error::DuplicateTransition { line: 10, state: 0, .. }
        ));

        let empty = ONE_STATE.replace("alphabet_in: a", "alphabet_in:");
        assert_eq!(parse_automaton(&empty).unwrap_err(), Error::EmptyAlphabet);

        let garbage = ONE_STATE.replace("initial: 0", "initial zero");
        assert!(matches!(
            parse_automaton(&garbage).unwrap_err(),
            Error::Syntax { line: 4, .. }
        ));

        let bad_letter = ONE_STATE.replace("a|y", "a|z");
        assert!(matches!(
            parse_automaton(&bad_letter).unwrap_err(),
            Error::Syntax { line: 8, .. }
        ));

        let no_colors = ONE_STATE.replace("colors: 0\n", "");
        assert!(matches!(parse_automaton(&no_colors).unwrap_err(), Error::Syntax { .. }));
    }

    #[test]
    fn unreachable_states_are_dropped_and_renumbered() {
        let text = "\
alphabet_in: a
states: 3
initial: 2
acceptance: reach
accepting: 0
trans: 0 a -> 0
trans: 1 a -> 1
trans: 2 a -> 0
";
        let a = parse_automaton(text).unwrap();
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.initial(), 0);
        assert_eq!(a.run_step(0, 0), &[1]);
        assert!(a.is_accepting(1));
    }

    #[test]
    fn finite_acceptance_rejects_productive_cycles() {
        let text = "\
alphabet_in: a
states: 2
initial: 0
acceptance: finite
accepting: 1
trans: 0 a -> 1
trans: 1 a -> 1
";
        assert!(matches!(
            parse_automaton(text).unwrap_err(),
            Error::NotAcyclic { state: 1 }
        ));
    }
}
