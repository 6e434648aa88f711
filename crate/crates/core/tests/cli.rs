use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;

fn morley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morley"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_tusi_prints_pair() {
    let o = morley(&["solve-tusi", "--sum", "40", "--ratio", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "alpha=20.0 beta=20.0\n");
}

#[test]
fn verify_reports_zero_failures() {
    let o = morley(&["verify", "--count", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"failures\":0"));
}

#[test]
fn verify_json_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("morley-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for p in [&a, &b] {
        let o = morley(&[
            "verify",
            "--count",
            "50",
            "--seed",
            "9",
            "--min-angle",
            "2",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let doc: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["seed"], 9);
    assert_eq!(doc["instances"].as_array().unwrap().len(), 50);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn run_prints_one_line_per_assertion() {
    let o = morley(&["run", "examples/morley.scene"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("PASS "));
}

#[test]
fn run_exit_codes() {
    let fixture = Path::new("tests/fixtures/missing_comma.scene");
    let o = morley(&["run", fixture.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:14:"));
    assert_eq!(morley(&["run", "does/not/exist.scene"]).status.code(), Some(2));
}

#[test]
fn construct_and_reverse_write_svg() {
    let o = morley(&["construct", "--angles", "90,60,30", "--svg", "-"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("<svg"));
    let o = morley(&["reverse", "--angles", "25,20,15", "--svg", "-"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("<line"));
}

#[test]
fn usage_errors() {
    for args in [
        &["--nope"][..],
        &["verify", "--count", "x"],
        &["frobnicate"],
        &[],
        &["solve-tusi", "--sum", "40"],
    ] {
        let o = morley(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(morley(&["--help"]).status.code(), Some(0));
}

#[test]
fn failed_assertion_exits_one() {
    let dir = std::env::temp_dir().join(format!("morley-fail-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.scene");
    std::fs::write(
        &path,
        "point A = (0, 0);\npoint B = (1, 0);\nassert point_near(A, B);\n",
    )
    .unwrap();
    let o = morley(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL "));
    std::fs::remove_dir_all(dir).unwrap();
}

fn call(args: &[String]) -> i32 {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    morley::cli::run(
        std::iter::once("morley".to_string()).chain(args.iter().cloned()),
        &mut out,
        &mut err,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn junk_flags_are_usage_errors(cmd in prop::sample::select(vec!["verify", "construct", "reverse", "solve-tusi", "run", "figures"]), flag in "--[a-z]{3,8}x") {
        prop_assert_eq!(call(&[cmd.to_string(), flag]), 2);
    }

    #[test]
    fn malformed_angle_lists_are_usage_errors(list in "[0-9,. a-z-]{0,12}") {
        let valid = list.split(',').filter_map(|s| s.trim().parse::<f64>().ok()).count() == 3
            && list.split(',').count() == 3;
        prop_assume!(!valid);
        prop_assert_eq!(call(&["construct".into(), "--angles".into(), list.clone()]), 2);
        prop_assert_eq!(call(&["reverse".into(), "--angles".into(), list]), 2);
    }
}
