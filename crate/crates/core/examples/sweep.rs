// Seeded random sweep over native triangles.
//
// cargo run --release --example sweep -- 10000 1

use morley::sweep::{run_sweep, SweepConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(500, 1)
}

fn run(count: usize, seed: u64) -> Result<(), Box<dyn std::error::Error>> {
    let doc = run_sweep(&SweepConfig::new(count, seed, 1.0))?;
    println!("{}", doc.summary());
    let worst = doc
        .instances
        .iter()
        .max_by(|a, b| a.max_relative_side_deviation.total_cmp(&b.max_relative_side_deviation))
        .ok_or("empty sweep")?;
    println!(
        "worst instance #{} with angles {:.3?}: side deviation {:e}",
        worst.index, worst.angles_deg, worst.max_relative_side_deviation
    );
    assert_eq!(doc.aggregate.failures, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|a| a.parse().ok()).unwrap_or(500);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    run(count, seed)
}
