//! Golden-file cases for the `deltaflip` binary.
//!
//! Each case is stored as `golden/<name>.txt` holding the exit code, stdout
//! and stderr of one invocation. Set `UPDATE_GOLDEN=1` to rewrite them.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const CASES: &[(&str, &[&str])] = &[
    ("check_delta_matroid", &["check", "--in", "@u24.json"]),
    (
        "check_exchange_fails",
        &["check", "--property", "exchange", "--in", "@odd.json"],
    ),
    (
        "check_isodistant_fails",
        &["check", "--property", "isodistant", "--in", "@odd.json"],
    ),
    (
        "check_bases",
        &["check", "--property", "bases", "--in", "@u24.json"],
    ),
    (
        "check_independent_fails",
        &["check", "--property", "independent", "--in", "@u24.json"],
    ),
    (
        "check_distance_minor",
        &[
            "check",
            "--property",
            "distance-minor",
            "--in",
            "@near_miss.json",
        ],
    ),
    (
        "check_restriction_distance",
        &[
            "check",
            "--property",
            "restriction-distance",
            "--in",
            "@near_miss.json",
        ],
    ),
    (
        "check_min_triple",
        &[
            "check",
            "--property",
            "min-triple",
            "--element",
            "a",
            "--in",
            "@u24.json",
        ],
    ),
    (
        "check_max_triple",
        &[
            "check",
            "--property",
            "max-triple",
            "--element",
            "c",
            "--in",
            "@u24.json",
        ],
    ),
    (
        "check_inline",
        &["check", r#"{"ground":["x","y"],"sets":[[],["x","y"]]}"#],
    ),
    ("check_schema_error", &["check", "--in", "@bad.json"]),
    (
        "apply_word",
        &["apply", "--word", "*a +b ~c", "--in", "@odd.json"],
    ),
    (
        "apply_inverse",
        &["apply", "--word", "+a *a", "--inverse", "--in", "@odd.json"],
    ),
    (
        "apply_bad_word",
        &["apply", "--word", "*a ?b", "--in", "@odd.json"],
    ),
    (
        "distance_one",
        &["distance", "--set", "a,b", "--in", "@near_miss.json"],
    ),
    ("distance_all", &["distance", "--in", "@odd.json"]),
    ("support_matrix", &["support", "--in", "@gf5.json"]),
    ("support_skew", &["support", "--in", "@skew3.json"]),
    ("support_graph", &["support", "--in", "@path.json"]),
    ("ppt", &["ppt", "--set", "a,c", "--in", "@gf5.json"]),
    (
        "ppt_schur",
        &["ppt", "--set", "a", "--schur", "--in", "@gf5.json"],
    ),
    (
        "ppt_singular",
        &["ppt", "--set", "a", "--in", "@skew3.json"],
    ),
    ("orbit", &["orbit", "--in", "@odd.json"]),
    (
        "orbit_too_large",
        &["orbit", "--cap", "3", "--in", "@u24.json"],
    ),
    ("vfclosed_u24", &["vfclosed", "--in", "@u24.json"]),
    ("vfclosed_u26", &["vfclosed", "--in", "@u26.json"]),
    ("vfclosed_not_delta", &["vfclosed", "--in", "@odd.json"]),
    ("reconstruct", &["reconstruct", "--in", "@graphic.json"]),
    (
        "reconstruct_not_graphic",
        &[
            "reconstruct",
            r#"{"ground":["a","b","c"],"sets":[[],["a","b","c"]]}"#,
        ],
    ),
    ("verify_list", &["verify", "--list"]),
    (
        "verify_flip_group",
        &["verify", "flip-group", "--samples", "20", "--seed", "3"],
    ),
    (
        "verify_support_distance",
        &[
            "verify",
            "support-distance",
            "--samples",
            "10",
            "--seed",
            "9",
        ],
    ),
    ("verify_unknown", &["verify", "no-such-suite"]),
    (
        "gen_uniform",
        &["gen", "uniform", "--n", "4", "--rank", "2"],
    ),
    (
        "gen_set_system",
        &["gen", "set-system", "--n", "4", "--seed", "2"],
    ),
    ("gen_graph", &["gen", "graph", "--n", "5", "--seed", "7"]),
    (
        "gen_symmetric",
        &[
            "gen",
            "symmetric",
            "--n",
            "3",
            "--field",
            "5",
            "--seed",
            "7",
        ],
    ),
    (
        "gen_skew",
        &["gen", "skew", "--n", "3", "--field", "3", "--seed", "1"],
    ),
    (
        "gen_bad_field",
        &["gen", "symmetric", "--n", "3", "--field", "4"],
    ),
    ("quiet", &["--quiet", "check", "--in", "@odd.json"]),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Replaces `@file` arguments with paths under `golden/inputs`.
fn resolve(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(file) => golden_dir().join("inputs").join(file).display().to_string(),
            None => a.to_string(),
        })
        .collect()
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn deltaflip(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_deltaflip"))
        .args(resolve(args))
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Renders a run without machine-specific paths.
pub fn transcript(args: &[&str], run: &Run) -> String {
    let root = golden_dir().join("inputs").display().to_string();
    format!(
        "$ deltaflip {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        args.join(" "),
        run.code,
        run.stdout,
        run.stderr.replace(&root, "inputs"),
    )
}

/// Compares one case against its golden file.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let got = transcript(args, &deltaflip(args));
    let path = golden_dir().join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &got).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let want = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want == got {
        Ok(())
    } else {
        Err(format!(
            "{name}: output differs from {}\n{got}",
            path.display()
        ))
    }
}
