// Recovers an acute angle pair from its sum and sine ratio, then runs the
// uniqueness check on a pair that does not meet its hypothesis.
//
// cargo run --example solve_tusi -- 50 1.5

use morley::tusi::Hypothesis;
use morley::{sine_ratio, solve_tusi, uniqueness_check, Tolerance, TusiProblem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(50.0, 1.5)
}

fn run(sum: f64, ratio: f64) -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = solve_tusi(&TusiProblem::from_degrees(sum, ratio)?, Tolerance::absolute(1e-13)?)?;
    println!(
        "sum {sum} deg, ratio {ratio}: alpha = {:.12} deg, beta = {:.12} deg",
        a.to_degrees(),
        b.to_degrees()
    );
    println!("round trip ratio {:.15}", sine_ratio(a, sum.to_radians())?);

    // equal sums, different ratios: the lemma says nothing here
    let (a30, a20, a25) = (30f64.to_radians(), 20f64.to_radians(), 25f64.to_radians());
    let report = uniqueness_check((a30, a20), (a25, a25), Tolerance::default())?;
    println!(
        "(30, 20) vs (25, 25): {:?}, counterexample = {}",
        report.hypothesis,
        report.is_counterexample()
    );
    assert_eq!(report.hypothesis, Hypothesis::RatiosDiffer);

    // pairs outside the acute range are refused
    let obtuse = uniqueness_check(
        (a20, 100f64.to_radians()),
        (a20, 100f64.to_radians()),
        Tolerance::default(),
    );
    println!(
        "(20, 100): {}",
        obtuse.map(|_| "accepted".to_string()).unwrap_or_else(|e| e.to_string())
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    match args[..] {
        [sum, ratio] => run(sum, ratio),
        _ => run_example(),
    }
}
