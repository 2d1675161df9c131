//! The `skein` binary end to end.

use std::process::{Command, Output};

use serde_json::Value;

fn skein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skein")).args(args).env_remove("SKEIN_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn canon_is_deterministic() {
    let a = skein(&["tangle", "canon", "compose(M(2,2,2), E(2), _)"]);
    let b = skein(&["tangle", "canon", "compose(M(2,2,2), E(2), _)"]);
    assert!(a.status.success());
    assert_eq!(json(&a), json(&b));
}

#[test]
fn parse_errors_carry_positions() {
    let bad = "compose(I(2,1),\n  Foo(1))";
    let v = json(&skein(&["tangle", "validate", bad]));
    assert_eq!(v["valid"], false);
    assert!(v["error"].as_str().unwrap().starts_with("2:3"), "{v}");
    let out = skein(&["tangle", "canon", bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:3"));
}

#[test]
fn tl_trace_in_quotient() {
    // tr(E1) in TL_2 is delta; at m = 4 that is sqrt 2.
    let out = skein(&["tl", "trace", "--n", "2", "--m", "4", "E1"]);
    assert!(out.status.success());
    assert!(json(&out).to_string().contains("delta"));
}

#[test]
fn relation_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("skein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("rel.json");
    let build = skein(&["present", "build", "--m", "3", "--out", file.to_str().unwrap()]);
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let verify = skein(&["present", "verify", "--m", "3", file.to_str().unwrap()]);
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stderr));
    // The same file does not hold in a different quotient.
    let other = skein(&["present", "verify", "--m", "4", file.to_str().unwrap()]);
    assert!(!other.status.success());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn seed_env_overrides_flag() {
    let run = |env: Option<&str>, seed: &str| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_skein"));
        c.args(["run", "core-props", "--seed", seed]);
        match env {
            Some(v) => c.env("SKEIN_SEED", v),
            None => c.env_remove("SKEIN_SEED"),
        };
        c.output().unwrap()
    };
    let a = run(None, "7");
    let b = run(Some("7"), "0");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(Some("x"), "0").status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(skein(&["run", "nonsense"]).status.code(), Some(2));
}
