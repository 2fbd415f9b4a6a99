use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_delaygames"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn solves_generated_families() {
    let dir = TempDir::new().unwrap();
    let reach = gen(dir.path(), "reach.aut", &["badpair-reach", "2"]);
    let v = json(&run(&["--json", "solve", reach.to_str().unwrap()]));
    assert_eq!(v["winner"], "O");
    assert_eq!(v["method"], "reach-universality");
    assert!(v["sufficient_lookahead"].as_u64().unwrap() >= 5);

    let shift = gen(dir.path(), "shift.aut", &["shift", "2"]);
    let v = json(&run(&[
        "--json",
        "solve",
        shift.to_str().unwrap(),
        "--method",
        "safety",
    ]));
    assert_eq!(
        (v["winner"].as_str(), v["method"].as_str()),
        (Some("O"), Some("safety-as-parity"))
    );
    assert!(v["lookahead_formula"].is_string());

    let first = gen(dir.path(), "first.aut", &["first-non-a"]);
    let v = json(&run(&["--json", "solve", first.to_str().unwrap()]));
    assert_eq!(v["winner"], "I");
    assert!(v["sufficient_lookahead"].is_null());

    let clopen = gen(dir.path(), "clopen.aut", &["clopen", "3"]);
    let v = json(&run(&["--json", "solve", clopen.to_str().unwrap()]));
    assert_eq!(
        (v["winner"].as_str(), v["sufficient_lookahead"].as_u64()),
        (Some("O"), Some(4))
    );
}

#[test]
fn oracle_modes() {
    let dir = TempDir::new().unwrap();
    let shift = gen(dir.path(), "shift.aut", &["shift", "2"]);
    let p = shift.to_str().unwrap();
    let v = json(&run(&["--json", "oracle", p, "--d", "2"]));
    assert_eq!((v["d"].as_u64(), v["winner"].as_str()), (Some(2), Some("I")));
    let v = json(&run(&["--json", "oracle", p, "--search-max", "4"]));
    assert_eq!(v["minimal_d"], 3);
    let v = json(&run(&["--json", "oracle", p, "--search-max", "2"]));
    assert!(v["minimal_d"].is_null());
}

#[test]
fn artifacts_are_written() {
    let dir = TempDir::new().unwrap();
    let a = gen(dir.path(), "r.aut", &["random", "2", "--seed", "4"]);
    let dot = dir.path().join("g.dot");
    let fam = dir.path().join("f.json");
    let out = run(&[
        "--json",
        "--dot",
        dot.to_str().unwrap(),
        "--dump-family",
        fam.to_str().unwrap(),
        "solve",
        a.to_str().unwrap(),
    ]);
    let v = json(&out);
    assert_eq!(v["method"], "parity-abstract");
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let f: Value = serde_json::from_str(&std::fs::read_to_string(&fam).unwrap()).unwrap();
    assert_eq!(f["members"], v["stats"]["family_members"]);

    let odot = dir.path().join("o.dot");
    json(&run(&[
        "--json",
        "--dot",
        odot.to_str().unwrap(),
        "oracle",
        a.to_str().unwrap(),
        "--d",
        "1",
    ]));
    assert!(std::fs::read_to_string(&odot).unwrap().contains("q0 []"));
}

#[test]
fn random_generation_follows_the_seed() {
    let a = run(&["gen", "random", "3", "--seed", "9"]);
    let b = run(&["gen", "random", "3", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn convert_and_info() {
    let dir = TempDir::new().unwrap();
    let s = gen(dir.path(), "s.aut", &["badpair-safety", "2"]);
    let p = dir.path().join("p.aut");
    let out = run(&["convert", s.to_str().unwrap(), "parity", p.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&run(&["--json", "info", p.to_str().unwrap()]));
    assert_eq!(
        (v["acceptance"].as_str(), v["states"].as_u64()),
        (Some("parity"), Some(13))
    );
    assert_eq!(v["colors"], serde_json::json!([0, 1]));
    let v = json(&run(&["--json", "solve", p.to_str().unwrap()]));
    assert_eq!(v["winner"], "O");

    let out = run(&["convert", s.to_str().unwrap(), "project"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("acceptance: safety"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    // usage
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "/definitely/missing.aut"]).status.code(), Some(1));
    assert_eq!(run(&["oracle", "x.aut"]).status.code(), Some(1));
    // resource cap
    let a = gen(dir.path(), "a.aut", &["badpair-safety", "2"]);
    assert_eq!(
        run(&["--cap", "2", "solve", a.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["--cap", "10", "oracle", a.to_str().unwrap(), "--d", "4"])
            .status
            .code(),
        Some(2)
    );
    // malformed or unsuitable input
    let bad = dir.path().join("bad.aut");
    std::fs::write(&bad, "states: x\n").unwrap();
    assert_eq!(run(&["solve", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(
        run(&["solve", a.to_str().unwrap(), "--method", "reachability"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn fixtures_match_the_generators() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for (file, args) in [
        ("shift2.aut", &["shift", "2"][..]),
        ("badpair-reach2.aut", &["badpair-reach", "2"]),
        ("badpair-safety2.aut", &["badpair-safety", "2"]),
        ("clopen3.aut", &["clopen", "3"]),
        ("first-non-a.aut", &["first-non-a"]),
    ] {
        let mut full = vec!["gen"];
        full.extend_from_slice(args);
        let generated = run(&full);
        let stored = std::fs::read(root.join(file)).unwrap();
        assert_eq!(generated.stdout, stored, "{file}");
    }
}
