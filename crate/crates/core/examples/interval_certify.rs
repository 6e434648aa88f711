// Outward-rounded enclosures and three-way certification.
//
// cargo run --example interval_certify

use morley::{certify_within, enclose_sin, CertResult, Interval, Tolerance};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = Interval::new(0.1, 0.1)?;
    let y = Interval::new(0.2, 0.2)?;
    let sum = x + y;
    println!("0.1 + 0.2 in {sum}, width {:e}", sum.width());
    assert!(sum.contains(0.3));

    let s = enclose_sin(Interval::point(std::f64::consts::FRAC_PI_6))?;
    assert!(s.contains(0.5));
    println!("sin(pi/6) in {s}");

    let tol = Tolerance::new(1e-12, 0.0)?;
    let near = certify_within(sum, Interval::point(0.3), tol);
    let far = certify_within(sum, Interval::point(0.31), tol);
    let wide = certify_within(Interval::new(0.0, 1e-11)?, Interval::point(0.0), tol);
    println!("0.1+0.2 vs 0.3: {near}; vs 0.31: {far}; [0, 1e-11] vs 0: {wide}");
    assert_eq!(
        (near, far, wide),
        (
            CertResult::CertifiedEqual,
            CertResult::CertifiedDistinct,
            CertResult::Undecided
        )
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
