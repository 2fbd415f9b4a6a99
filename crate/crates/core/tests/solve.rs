mod common;

use delay_games::automaton::ops::{absorbing, run_product, to_parity};
use delay_games::generators::{gen_random, gen_random_acyclic, gen_random_reach_safety, RandomLimits};
use delay_games::oracle::{as_parity, oracle_winner, OracleConfig};
use delay_games::solve::{
    check_projection_universal, extract_lookup_strategy, normalize_acyclic, parity_bound, solve_auto, solve_clopen,
    solve_parity, solve_reachability, solve_safety, Method, SolveOptions,
};
use delay_games::{Error, Player, ProductLetter};
use proptest::prelude::*;

fn small() -> RandomLimits {
    RandomLimits {
        max_states: 4,
        colors: 3,
        inputs: 2,
        outputs: 2,
    }
}

#[test]
fn reachability_agrees_with_the_parity_pipeline() {
    let (mut o, mut i) = (0, 0);
    for seed in 0..100 {
        let a = gen_random_reach_safety(seed, small(), true);
        let r = solve_reachability(&a).unwrap();
        let p = solve_parity(&to_parity(&a).unwrap()).unwrap();
        assert_eq!(r.winner, p.winner, "seed {seed}");
        match r.winner {
            Player::O => o += 1,
            Player::I => i += 1,
        }
    }
    assert!(o > 0 && i > 0, "both outcomes occur ({o} O, {i} I)");
}

#[test]
fn safety_agrees_with_the_oracle_at_small_lookahead() {
    for seed in 0..100 {
        let a = gen_random_reach_safety(seed, small(), false);
        let s = solve_safety(&a).unwrap();
        assert_eq!(s.method, Method::SafetyAsParity);
        let p = as_parity(&a).unwrap();
        for d in 1..=4 {
            let w = oracle_winner(&p, OracleConfig::new(d)).unwrap();
            assert!(!(w == Player::O && s.winner == Player::I), "seed {seed} d {d}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reachability_horizon_is_sufficient(seed in any::<u64>()) {
        let a = gen_random_reach_safety(seed, small(), true);
        let r = solve_reachability(&a).unwrap();
        let p = to_parity(&a).unwrap();
        match r.winner {
            Player::O => {
                let h = r.sufficient_lookahead.unwrap() as usize;
                prop_assume!(h <= 6);
                prop_assert_eq!(oracle_winner(&p, OracleConfig::new(h)).unwrap(), Player::O);
            }
            Player::I => {
                prop_assert_eq!(r.sufficient_lookahead, None);
                for d in 1..=5 {
                    prop_assert_eq!(oracle_winner(&p, OracleConfig::new(d)).unwrap(), Player::I);
                }
            }
        }
    }

    #[test]
    fn lookup_entries_are_minimal_accepted_and_cover_every_input(seed in any::<u64>()) {
        let a = gen_random_reach_safety(seed, small(), true);
        let u = check_projection_universal(&a).unwrap();
        prop_assume!(u.universal);
        let table = extract_lookup_strategy(&a, &SolveOptions::default()).unwrap();
        let abs = absorbing(&a).unwrap();
        let accepts = |input: &[usize], output: &[usize]| {
            let word: Vec<ProductLetter> = input.iter().zip(output).map(|(&i, &o)| ProductLetter { input: i, output: o }).collect();
            abs.is_accepting(*run_product(&abs, &word).unwrap().last().unwrap())
        };
        for (input, output) in &table.entries {
            prop_assert!(!input.is_empty());
            prop_assert_eq!(input.len(), output.len());
            prop_assert!(accepts(input, output));
            for n in 1..input.len() {
                prop_assert!(!table.entries.contains_key(&input[..n]), "entries are prefix-free");
            }
        }
        let h = u.horizon.unwrap();
        for w in common::words(a.letters().input().len(), h) {
            prop_assert!(table.lookup(&w).is_some());
        }
    }

    #[test]
    fn clopen_solver_matches_the_oracle(seed in any::<u64>()) {
        let a = gen_random_acyclic(seed, 4);
        let (_, depth) = normalize_acyclic(&a).unwrap();
        let r = solve_clopen(&a).unwrap();
        let p = as_parity(&a).unwrap();
        match r.winner {
            Player::O => {
                let d = r.sufficient_lookahead.unwrap() as usize;
                prop_assert_eq!(d, depth.max(1));
                prop_assert_eq!(oracle_winner(&p, OracleConfig::new(d)).unwrap(), Player::O);
            }
            Player::I => {
                prop_assert_eq!(oracle_winner(&p, OracleConfig::new(depth + 1)).unwrap(), Player::I);
            }
        }
    }

    #[test]
    fn parity_solver_dispatch_and_stats(seed in any::<u64>()) {
        let a = gen_random(seed, small());
        let r = solve_auto(&a, &SolveOptions::default()).unwrap();
        prop_assert_eq!(r.method, Method::ParityAbstract);
        let direct = solve_parity(&a).unwrap();
        prop_assert_eq!((r.winner, r.sufficient_lookahead), (direct.winner, direct.sufficient_lookahead));
        prop_assert_eq!(r.sufficient_lookahead.is_some(), r.winner == Player::O);
        prop_assert_eq!(r.lookahead_formula.is_some(), r.winner == Player::O);
        let n = r.stats["color_states"].as_u64().unwrap() as usize;
        let b = parity_bound(n, a.state_count(), a.distinct_colors().len());
        if r.winner == Player::O {
            prop_assert_eq!(r.sufficient_lookahead, b.value);
        }
        let json = serde_json::to_value(&r).unwrap();
        prop_assert!(json["winner"] == "O" || json["winner"] == "I");
    }
}

#[test]
fn parity_bound_is_the_smaller_candidate() {
    // 2·2^4 = 32 vs 2^(2·2·2+2)+2 = 1026
    let b = parity_bound(2, 2, 2);
    assert_eq!(b.value, Some(32));
    assert_eq!(b.formula, "min(2·2^{4}, 2^{2·2·2+2}+2)");
    // 2·2^16 vs 2^(2·1·4+2)+2 = 1026
    assert_eq!(parity_bound(4, 1, 4).value, Some(1026));
    assert_eq!(parity_bound(100, 100, 100).value, None);
}

#[test]
fn caps_surface_as_resource_errors() {
    let a = gen_random(5, small());
    let err = solve_auto(&a, &SolveOptions::uniform(1)).unwrap_err();
    assert!(err.is_resource(), "{err:?}");
}

#[test]
fn solvers_reject_unsuitable_conditions() {
    let reach = gen_random_reach_safety(1, small(), true);
    let safety = gen_random_reach_safety(1, small(), false);
    assert!(matches!(solve_safety(&reach), Err(Error::UnsupportedAcceptance { .. })));
    assert!(matches!(
        solve_reachability(&safety),
        Err(Error::UnsupportedAcceptance { .. })
    ));
    assert!(matches!(solve_parity(&safety), Err(Error::NotParity)));
    assert!(matches!(solve_clopen(&reach), Err(Error::UnsupportedAcceptance { .. })));
}
