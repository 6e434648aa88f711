// Writes fig1.svg ... fig5.svg and prints each element census.
//
// cargo run --example render_figures -- out/

use morley::figures::{all_figures, GOLDEN_CENSUS};
use morley::render::{census, RenderStyle};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(None)
}

fn run(outdir: Option<std::path::PathBuf>) -> Result<(), Box<dyn std::error::Error>> {
    let figures = all_figures(&RenderStyle::default())?;
    for ((name, svg), golden) in figures.iter().zip(GOLDEN_CENSUS) {
        let c = census(svg);
        println!("{name}: {c:?}");
        assert_eq!(c, golden);
        if let Some(dir) = &outdir {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), svg)?;
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::env::args().nth(1).map(Into::into))
}
