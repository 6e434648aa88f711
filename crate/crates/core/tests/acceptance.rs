//! Acceptance criteria 1-8. One PASS/FAIL line each; exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use morley::figures::GOLDEN_CENSUS;
use morley::render::census;
use morley::reverse::check_companion_equality;
use morley::scene::{evaluate_scene, parse_scene};
use morley::{
    assemble_and_fit, build_reverse_figure, law_of_sines_residual, sine_ratio, solve_tusi, MorleyConfig, Tolerance,
    TusiProblem,
};
use rand::RngExt;

#[path = "common/mod.rs"]
mod common;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn manifest(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("morley-acceptance-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sweep_verify() -> Outcome {
    let json = scratch("verify").join("report.json");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_morley"))
        .args([
            "verify",
            "--count",
            "10000",
            "--seed",
            "1",
            "--min-angle",
            "1",
            "--json",
        ])
        .arg(&json)
        .output()
        .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let doc: serde_json::Value = serde_json::from_slice(&fs::read(&json).map_err(|e| e.to_string())?).unwrap();
    let agg = &doc["aggregate"];
    let failures = agg["failures"].as_u64().unwrap();
    let side = agg["max_side_deviation"].as_f64().unwrap();
    let angle = agg["max_angle_deviation"].as_f64().unwrap();
    let _ = fs::remove_dir_all(json.parent().unwrap());
    check(
        out.status.code() == Some(0) && secs < 10.0 && failures == 0 && side <= 1e-9 && angle <= 1e-9,
        format!("{secs:.2}s, {failures} failures, max side dev {side:e}, max angle dev {angle:e} rad"),
    )
}

fn reverse_forward() -> Outcome {
    let mut rng = common::rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let native = common::random_native(&mut rng, 1.0);
        let config = MorleyConfig::construct(&native).map_err(|e| e.to_string())?;
        let fit = assemble_and_fit(config.angle_triple, &native)
            .map_err(|e| e.to_string())?
            .fit
            .ok_or("no fit")?;
        // residual is already in native diameters
        worst = worst.max(fit.morley_residual);
    }
    check(
        worst <= 1e-9,
        format!("max W-to-T vertex residual {worst:e} diameters over 1000 natives"),
    )
}

fn angle_identities() -> Outcome {
    let mut rng = common::rng(3);
    let (mut sum, mut top): (f64, f64) = (0.0, 0.0);
    for _ in 0..10_000 {
        let angles = common::random_triple(&mut rng, 1.0);
        let fig = build_reverse_figure(angles, 1.0).map_err(|e| e.to_string())?;
        sum = sum.max((fig.alpha_prime + fig.beta_prime - angles.alpha() - angles.beta()).abs());
        top = top.max((fig.top_angle - angles.gamma() - 2.0 * FRAC_PI_3).abs());
    }
    check(
        sum <= 1e-12 && top <= 1e-12,
        format!("max angle-sum gap {sum:e} rad, max top-angle gap {top:e} rad"),
    )
}

fn double_identity() -> Outcome {
    let mut rng = common::rng(3);
    let (mut first, mut second): (f64, f64) = (0.0, 0.0);
    for _ in 0..10_000 {
        let angles = common::random_triple(&mut rng, 1.0);
        let fig = build_reverse_figure(angles, 1.0).map_err(|e| e.to_string())?;
        let c = check_companion_equality(&fig, Tolerance::default()).map_err(|e| e.to_string())?;
        first = first.max(c.ratio_residual);
        second = second.max(c.companion_residual);
    }
    check(
        first <= 1e-12 && second <= 1e-10,
        format!("max |sin a/sin b - x/y| {first:e}, max |x/y - sin a'/sin b'| {second:e}"),
    )
}

fn tusi_round_trip() -> Outcome {
    let mut rng = common::rng(5);
    let tol = Tolerance::absolute(1e-13).unwrap();
    let (mut worst, mut violations): (f64, usize) = (0.0, 0);
    for _ in 0..10_000 {
        let sum = rng.random_range(1e-3..PI - 1e-3);
        let lo = (sum - FRAC_PI_2).max(0.0);
        let hi = sum.min(FRAC_PI_2);
        let margin = 1e-3 * (hi - lo);
        let a1 = rng.random_range(lo + margin..hi - margin);
        let a2 = rng.random_range(lo + margin..hi - margin);
        let r = sine_ratio(a1, sum).map_err(|e| e.to_string())?;
        let (alpha, _) =
            solve_tusi(&TusiProblem::new(sum, r).map_err(|e| e.to_string())?, tol).map_err(|e| e.to_string())?;
        worst = worst.max((alpha - a1).abs());
        let (x, y) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
        if x < y && sine_ratio(x, sum).unwrap() >= sine_ratio(y, sum).unwrap() {
            violations += 1;
        }
    }
    check(
        worst <= 1e-10 && violations == 0,
        format!("max round-trip error {worst:e} rad, {violations} monotonicity violations"),
    )
}

fn law_of_sines() -> Outcome {
    let mut rng = common::rng(6);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let t = common::random_triangle(&mut rng);
        // the residual carries the diameter factor and is scale free
        worst = worst.max(law_of_sines_residual(&t));
    }
    check(worst <= 1e-12, format!("max residual {worst:e} over 1e5 triangles"))
}

fn dsl_corpus() -> Outcome {
    let mut files = vec![manifest("examples/morley.scene")];
    for e in fs::read_dir(manifest("examples/scenes")).map_err(|e| e.to_string())? {
        files.push(e.map_err(|e| e.to_string())?.path());
    }
    files.sort();
    let mut passed = 0;
    for path in &files {
        let ast = parse_scene(&fs::read_to_string(path).unwrap()).map_err(|e| format!("{}: {e}", path.display()))?;
        let out = evaluate_scene(&ast, Tolerance::default()).map_err(|e| format!("{}: {e}", path.display()))?;
        if out.all_passed() && !out.assertion_results.is_empty() {
            passed += 1;
        }
    }
    let mut fixtures = 0;
    let mut bad = Vec::new();
    for e in fs::read_dir(manifest("tests/fixtures")).map_err(|e| e.to_string())? {
        let path = e.unwrap().path();
        let src = fs::read_to_string(&path).unwrap();
        let want = src
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# expect-error: "))
            .unwrap_or("?")
            .to_string();
        let got = parse_scene(&src).err().map(|e| format!("{}:{}", e.line, e.column));
        if got.as_deref() != Some(want.as_str()) {
            bad.push(format!("{} want {want} got {got:?}", path.display()));
        }
        fixtures += 1;
    }
    check(
        passed == files.len() && passed >= 5 && bad.is_empty() && fixtures > 0,
        format!(
            "{passed}/{} scripts pass, {}/{fixtures} fixtures at the expected position {bad:?}",
            files.len(),
            fixtures - bad.len()
        ),
    )
}

fn figures() -> Outcome {
    let dirs = [scratch("fig-a"), scratch("fig-b")];
    for d in &dirs {
        let out = Command::new(env!("CARGO_BIN_EXE_morley"))
            .arg("figures")
            .arg("--outdir")
            .arg(d)
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!("figures exited {:?}", out.status.code()));
        }
    }
    let mut mismatches = Vec::new();
    let mut identical = true;
    for (i, golden) in GOLDEN_CENSUS.iter().enumerate() {
        let name = format!("fig{}.svg", i + 1);
        let a = fs::read_to_string(dirs[0].join(&name)).map_err(|e| e.to_string())?;
        let b = fs::read_to_string(dirs[1].join(&name)).map_err(|e| e.to_string())?;
        identical &= a == b;
        if census(&a) != *golden {
            mismatches.push(name);
        }
    }
    for d in &dirs {
        let _ = fs::remove_dir_all(d);
    }
    check(
        mismatches.is_empty() && identical,
        format!("5 figures, census mismatches {mismatches:?}, byte-identical reruns: {identical}"),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Morley theorem sweep", sweep_verify),
        ("reverse-forward agreement", reverse_forward),
        ("angle-sum and top-angle identities", angle_identities),
        ("double sine-ratio identity", double_identity),
        ("al-Tusi round trip and monotonicity", tusi_round_trip),
        ("law-of-sines oracle", law_of_sines),
        ("DSL corpus", dsl_corpus),
        ("figure regeneration", figures),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
