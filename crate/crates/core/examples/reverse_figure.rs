// Builds the abstract figure around an equilateral W from the angle thirds
// (25°, 20°, 15°), checks the companion ratios, then assembles all three
// outer triangles and fits them onto a native with the same angles.
//
// cargo run --example reverse_figure

use morley::reverse::check_companion_equality;
use morley::sweep::triangle_from_angles;
use morley::{assemble_and_fit, build_reverse_figure, AngleTriple, Tolerance};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let angles = AngleTriple::from_degrees(25.0, 20.0, 15.0)?;
    let fig = build_reverse_figure(angles, 1.0)?;
    println!("x = {:.15}, y = {:.15}", fig.x, fig.y);
    println!("top angle {:.12} deg", fig.top_angle.to_degrees());

    let companion = check_companion_equality(&fig, Tolerance::default())?;
    println!(
        "sin a/sin b = {:.15}  x/y = {:.15}  sin a'/sin b' = {:.15}",
        companion.sine_ratio, companion.side_ratio, companion.companion_ratio
    );
    println!("alpha' = alpha: {}", companion.verdict);

    let native = triangle_from_angles([75.0, 60.0, 45.0]).ok_or("degenerate native")?;
    let assembled = assemble_and_fit(angles, &native)?;
    let fit = assembled.fit.as_ref().ok_or("no fit")?;
    println!(
        "fit residuals: vertices {:e}, Morley points {:e}",
        fit.vertex_residual, fit.morley_residual
    );
    assert!(fit.morley_residual < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
