// Morley triangle of a 3-4-5 right triangle, checked with interval bounds.
//
// cargo run --example construct_morley

use morley::{MorleyConfig, Tolerance, Triangle};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let native = Triangle::from_coords([(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)])?;
    let config = MorleyConfig::construct(&native)?;
    for (name, p) in ["P", "Q", "R"].iter().zip(config.morley_points) {
        println!("{name} = ({:.12}, {:.12})", p.x, p.y);
    }
    let report = config.report(Tolerance::default().scaled(native.diameter()));
    for (side, enclosure) in report.side_lengths.iter().zip(&report.side_enclosures) {
        println!("side {side:.15} in {enclosure}");
    }
    println!("verdict: {}", report.verdict);
    assert!(report.verdict.is_equal());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
