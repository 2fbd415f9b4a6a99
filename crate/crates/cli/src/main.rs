use std::fs;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use delay_games::automaton::ops::{complete, finite_to_reach, project, recast_as_reach};
use delay_games::generators::{
    gen_random, gen_random_acyclic, gen_random_reach_safety, generate, FamilyKind, FamilyParams, RandomLimits,
};
use delay_games::oracle::{as_parity, build_unrolled_game, minimal_lookahead_search, OracleConfig};
use delay_games::solve::{
    analyze_parity, extract_lookup_strategy, solve_clopen_with, solve_reachability_with, DelayResult, Method,
    SolveOptions,
};
use delay_games::{parse_automaton, serialize, Acceptance, Automaton, Error};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "delaygames", version, about = "Solve delay games with constant lookahead")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON (default when stdout is not a terminal).
    #[arg(long, global = true)]
    json: bool,
    /// Cap on every exponential construction (macro-states, subsets, game vertices).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Write the solved game as Graphviz DOT to this file.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Seed for the random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the enumerated behavior family as JSON to this file.
    #[arg(long, global = true, value_name = "PATH")]
    dump_family: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the delay game of an automaton.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Include the lookup-table strategy (reachability only).
        #[arg(long)]
        strategy: bool,
    },
    /// Brute-force the game for a fixed lookahead, or search for the smallest one.
    Oracle {
        file: PathBuf,
        #[arg(
            long,
            value_name = "D",
            conflicts_with = "search_max",
            required_unless_present = "search_max"
        )]
        d: Option<usize>,
        #[arg(long, value_name = "D")]
        search_max: Option<usize>,
    },
    /// Generate a benchmark automaton.
    Gen {
        /// badpair-reach, badpair-safety, clopen, shift, first-non-a, random,
        /// random-reach, random-safety or random-acyclic.
        family: String,
        /// Family parameter; for random families the state (or depth) bound.
        n: Option<usize>,
        /// Output file (stdout if omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Convert an automaton.
    Convert {
        file: PathBuf,
        #[arg(value_enum)]
        target: Target,
        /// Output file (stdout if omitted).
        out: Option<PathBuf>,
    },
    /// Summarize an automaton.
    Info { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Parity,
    Reachability,
    Safety,
    Clopen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Equivalent parity automaton.
    Parity,
    /// Reachability reading (finite-word automata: `L·Σ^ω`; safety: same accepting set).
    Reach,
    /// Add a rejecting sink for missing transitions.
    Complete,
    /// Erase the output component.
    Project,
    /// Canonical form only.
    Canonical,
}

enum Failure {
    Usage(anyhow::Error),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 2 } else { 3 })
        }
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, value: &Value, human: impl FnOnce() -> String) -> Outcome {
        let text = if self.json {
            serde_json::to_string_pretty(value).expect("serializable")
        } else {
            human()
        };
        match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(anyhow!(e).context("writing to stdout").into()),
            _ => Ok(()),
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    let out = Output {
        json: g.json || !std::io::stdout().is_terminal(),
    };
    let opts = g.cap.map_or_else(SolveOptions::default, SolveOptions::uniform);
    match &cli.command {
        Command::Solve { file, method, strategy } => solve(g, &out, &opts, &load(file)?, *method, *strategy),
        Command::Oracle { file, d, search_max } => oracle(g, &out, &load(file)?, *d, *search_max),
        Command::Gen { family, n, out: path } => gen(g, family, *n, path.as_deref()),
        Command::Convert {
            file,
            target,
            out: path,
        } => convert(&load(file)?, *target, path.as_deref()),
        Command::Info { file } => info(&out, &load(file)?),
    }
}

fn load(path: &Path) -> Result<Automaton, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_automaton(&text)?)
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn write_or_print(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => write_file(p, text),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(anyhow!(e).context("writing to stdout").into()),
            _ => Ok(()),
        },
    }
}

fn resolve_method(m: MethodArg, a: &Automaton) -> MethodArg {
    match (m, a.acceptance()) {
        (MethodArg::Auto, Acceptance::Parity(_)) => MethodArg::Parity,
        (MethodArg::Auto, Acceptance::Reach(_)) => MethodArg::Reachability,
        (MethodArg::Auto, Acceptance::Safety(_)) => MethodArg::Safety,
        (MethodArg::Auto, Acceptance::FiniteReach(_)) => MethodArg::Clopen,
        (m, _) => m,
    }
}

fn solve(g: &Global, out: &Output, opts: &SolveOptions, a: &Automaton, method: MethodArg, strategy: bool) -> Outcome {
    let method = resolve_method(method, a);
    let abstract_game = matches!(method, MethodArg::Parity | MethodArg::Safety);
    if !abstract_game && (g.dot.is_some() || g.dump_family.is_some()) {
        return Err(anyhow!("--dot and --dump-family need the parity or safety method").into());
    }
    if strategy && method != MethodArg::Reachability {
        return Err(anyhow!("--strategy needs the reachability method").into());
    }

    let result: DelayResult = match method {
        MethodArg::Parity | MethodArg::Safety => {
            let parity = if method == MethodArg::Safety {
                if !matches!(a.acceptance(), Acceptance::Safety(_)) {
                    return Err(Error::UnsupportedAcceptance {
                        operation: "safety solver",
                        found: a.acceptance().kind(),
                    }
                    .into());
                }
                as_parity(a)?
            } else {
                a.clone()
            };
            let an = analyze_parity(&parity, opts)?;
            if let Some(path) = &g.dot {
                write_file(path, &an.game.game.to_dot())?;
            }
            if let Some(path) = &g.dump_family {
                let text = serde_json::to_string_pretty(&an.family.to_json(&an.tracking)).expect("serializable");
                write_file(path, &text)?;
            }
            let mut r = an.result;
            if method == MethodArg::Safety {
                r.method = Method::SafetyAsParity;
            }
            r
        }
        MethodArg::Reachability => solve_reachability_with(a, opts)?,
        MethodArg::Clopen => solve_clopen_with(a, opts)?,
        MethodArg::Auto => unreachable!("resolved above"),
    };

    let mut value = serde_json::to_value(&result).expect("serializable");
    if strategy && result.winner == delay_games::Player::O {
        value["strategy"] = extract_lookup_strategy(a, opts)?.to_json(a.letters());
    }
    out.emit(&value, || {
        let mut s = format!(
            "winner: {:?}\nmethod: {}",
            result.winner,
            value["method"].as_str().unwrap_or("")
        );
        if let Some(d) = result.sufficient_lookahead {
            s += &format!("\nsufficient lookahead: {d}");
        } else if result.winner == delay_games::Player::O {
            s += "\nsufficient lookahead: exceeds 64 bits";
        }
        if let Some(f) = &result.lookahead_formula {
            s += &format!("\nbound: {f}");
        }
        for (k, v) in &result.stats {
            s += &format!("\n{k}: {v}");
        }
        if let Some(t) = value.get("strategy") {
            s += &format!("\nstrategy: {t}");
        }
        s
    })
}

fn oracle(g: &Global, out: &Output, a: &Automaton, d: Option<usize>, search_max: Option<usize>) -> Outcome {
    let cap = g.cap.unwrap_or(delay_games::oracle::DEFAULT_VERTEX_CAP);
    let parity = as_parity(a)?;
    if g.dump_family.is_some() {
        return Err(anyhow!("--dump-family is not available for the oracle").into());
    }
    match (d, search_max) {
        (Some(d), _) => {
            if d == 0 {
                return Err(anyhow!("--d must be at least 1").into());
            }
            let u = build_unrolled_game(&parity, OracleConfig::new(d).with_cap(cap))?;
            let sol = u.solve();
            let winner = sol.winner(u.game.initial());
            if let Some(path) = &g.dot {
                write_file(path, &u.labeled(a).to_dot())?;
            }
            let value = json!({ "d": d, "winner": winner, "vertices": u.game.len() });
            out.emit(&value, || {
                format!("d: {d}\nwinner: {winner:?}\nvertices: {}", u.game.len())
            })
        }
        (None, Some(max)) => {
            if g.dot.is_some() {
                return Err(anyhow!("--dot needs a fixed --d").into());
            }
            let found = minimal_lookahead_search(&parity, max, cap)?;
            let value = json!({ "minimal_d": found, "search_max": max });
            out.emit(&value, || match found {
                Some(d) => format!("minimal lookahead: {d}"),
                None => format!("Player I wins for every lookahead up to {max}"),
            })
        }
        (None, None) => Err(anyhow!("one of --d or --search-max is required").into()),
    }
}

fn gen(g: &Global, family: &str, n: Option<usize>, path: Option<&Path>) -> Outcome {
    let a = match family {
        "random" | "random-reach" | "random-safety" => {
            let limits = RandomLimits {
                max_states: n.unwrap_or(3),
                ..RandomLimits::default()
            };
            match family {
                "random" => gen_random(g.seed, limits),
                "random-reach" => gen_random_reach_safety(g.seed, limits, true),
                _ => gen_random_reach_safety(g.seed, limits, false),
            }
        }
        "random-acyclic" => gen_random_acyclic(g.seed, n.unwrap_or(3)),
        name => {
            let kind: FamilyKind = name.parse().map_err(|e: Error| anyhow!("{e}"))?;
            let n = match (kind, n) {
                (FamilyKind::FirstNonA, _) => 1,
                (_, Some(n)) => n,
                (_, None) => return Err(anyhow!("family {name} needs a parameter n").into()),
            };
            generate(FamilyParams { family: kind, n })?
        }
    };
    write_or_print(path, &serialize(&a))
}

fn convert(a: &Automaton, target: Target, path: Option<&Path>) -> Outcome {
    let converted = match target {
        Target::Parity => as_parity(a)?,
        Target::Reach => match a.acceptance() {
            Acceptance::FiniteReach(_) => finite_to_reach(a)?,
            _ => recast_as_reach(a)?,
        },
        Target::Complete => complete(a)?,
        Target::Project => project(a)?,
        Target::Canonical => a.canonical(),
    };
    write_or_print(path, &serialize(&converted))
}

fn info(out: &Output, a: &Automaton) -> Outcome {
    let letters = a.letters();
    let input: Vec<&str> = letters.input().symbols().collect();
    let output: Option<Vec<&str>> = letters.output().map(|o| o.symbols().collect());
    let value = json!({
        "states": a.state_count(),
        "initial": a.initial(),
        "acceptance": a.acceptance().kind(),
        "alphabet_in": input,
        "alphabet_out": output,
        "transitions": a.transitions().count(),
        "deterministic": a.is_deterministic(),
        "complete": a.is_complete(),
        "acyclic": a.is_acyclic(),
        "colors": a.distinct_colors(),
        "reachable_states": a.reachable().iter().filter(|&&r| r).count(),
    });
    out.emit(&value, || {
        let mut s = String::new();
        for (k, v) in value.as_object().expect("object") {
            s += &format!("{k}: {v}\n");
        }
        s.trim_end().to_string()
    })
}
