// Parses and evaluates a `.scene` script; defaults to the shipped
// `morley.scene`. Also generates the same script for another native.
//
// cargo run --example run_scene -- examples/scenes/obtuse_150_20_10.scene

use morley::scene::{evaluate_scene, morley_scene_source, parse_scene};
use morley::{Tolerance, Triangle};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/morley.scene"))
}

fn run(path: &str) -> Result<(), Box<dyn std::error::Error>> {
    let source = std::fs::read_to_string(path)?;
    let ast = parse_scene(&source)?;
    println!("{path}: {} statements", ast.len());
    let outcome = evaluate_scene(&ast, Tolerance::default())?;
    for r in &outcome.assertion_results {
        println!("  {} {} residual {:e}: {}", r.span, r.kind, r.residual, r.verdict);
    }
    assert!(outcome.all_passed());

    let generated = morley_scene_source(&Triangle::from_coords([(0.0, 0.0), (7.0, 1.0), (2.0, 5.0)])?);
    let outcome = evaluate_scene(&parse_scene(&generated)?, Tolerance::default())?;
    println!("generated script passes: {}", outcome.all_passed());
    if let Some(p) = outcome.point("P") {
        println!("  P = ({:.12}, {:.12})", p.x, p.y);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(path) => run(&path),
        None => run_example(),
    }
}
