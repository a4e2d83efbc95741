mod common;

use common::{check_golden, deltaflip, CASES};
use deltaflip_core::input::parse_set_system;

#[test]
fn golden_transcripts() {
    let failures: Vec<String> = CASES
        .iter()
        .filter_map(|(name, args)| check_golden(name, args).err())
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_verb_has_a_golden_case() {
    for verb in [
        "check",
        "apply",
        "distance",
        "support",
        "ppt",
        "orbit",
        "vfclosed",
        "reconstruct",
        "verify",
        "gen",
    ] {
        assert!(
            CASES.iter().any(|(_, args)| args.contains(&verb)),
            "no case for {verb}"
        );
    }
}

#[test]
fn apply_then_inverse_restores_the_input() {
    let input = std::fs::read_to_string(common::golden_dir().join("inputs/odd.json")).unwrap();
    let original = parse_set_system(&input).unwrap();
    for word in ["*a", "+a +a", "*a +b ~c", "+a *a +a *b", "~a ~b *c +c *a"] {
        let forward = deltaflip(&["--json", "apply", "--word", word, &input]);
        assert_eq!(forward.code, 0, "{}", forward.stderr);
        let back = deltaflip(&[
            "--json",
            "apply",
            "--word",
            word,
            "--inverse",
            forward.stdout.trim(),
        ]);
        assert_eq!(back.code, 0, "{}", back.stderr);
        assert_eq!(
            parse_set_system(&back.stdout).unwrap(),
            original,
            "word {word}"
        );
    }
}

#[test]
fn reports_are_identical_across_runs() {
    let args = [
        "--json",
        "verify",
        "graph-layer",
        "--samples",
        "40",
        "--seed",
        "17",
    ];
    let first = deltaflip(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(deltaflip(&args).stdout, first.stdout);
    let other = deltaflip(&[
        "--json",
        "verify",
        "graph-layer",
        "--samples",
        "40",
        "--seed",
        "18",
    ]);
    assert_ne!(other.stdout, first.stdout);
}

#[test]
fn report_schema() {
    let run = deltaflip(&[
        "--json",
        "verify",
        "pivot-transform",
        "--samples",
        "5",
        "--seed",
        "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["suite"], "pivot-transform");
    assert_eq!(v["seed"], 2);
    assert!(v["cases"].as_u64().unwrap() > 0);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn exit_codes() {
    assert_eq!(
        deltaflip(&["--quiet", "check", r#"{"ground":["a"],"sets":[[]]}"#]).code,
        0
    );
    assert_eq!(
        deltaflip(&["--quiet", "check", r#"{"ground":["a"],"sets":[]}"#]).code,
        2
    );
    assert_eq!(
        deltaflip(&[
            "--quiet",
            "check",
            "--property",
            "bases",
            r#"{"ground":["a","b"],"sets":[[],["a","b"]]}"#
        ])
        .code,
        1
    );
    assert_eq!(
        deltaflip(&["--quiet", "check", "--in", "/nonexistent.json"]).code,
        2
    );
}
