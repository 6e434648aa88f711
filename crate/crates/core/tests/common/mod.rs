#![allow(dead_code)]

use morley::sweep::sample_native_angles;
use morley::{AngleTriple, Point, Triangle};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Three uniform points in a box of random size, retried until the triangle
/// is not degenerate.
pub fn random_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let s = 10f64.powf(rng.random_range(-3.0..3.0));
        let p = |rng: &mut ChaCha8Rng| Point::new(s * rng.random_range(-1.0..1.0), s * rng.random_range(-1.0..1.0));
        let (a, b, c) = (p(rng), p(rng), p(rng));
        if let Ok(t) = Triangle::new(a, b, c) {
            return t;
        }
    }
}

/// Random native with every angle at least `min_deg`, randomly placed.
pub fn random_native(rng: &mut ChaCha8Rng, min_deg: f64) -> Triangle {
    let angles = sample_native_angles(rng, min_deg);
    let t = morley::sweep::triangle_from_angles(angles).unwrap();
    let s = morley::Similarity::new(
        10f64.powf(rng.random_range(-2.0..2.0)),
        rng.random_range(-3.2..3.2),
        morley::Vec2::new(rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0)),
        rng.random_bool(0.5),
    )
    .unwrap();
    t.map(&s).unwrap()
}

/// Angle thirds of a random native whose angles are at least `min_deg`.
pub fn random_triple(rng: &mut ChaCha8Rng, min_deg: f64) -> AngleTriple {
    let [a, b, c] = sample_native_angles(rng, min_deg);
    AngleTriple::from_native_angles([a.to_radians(), b.to_radians(), c.to_radians()]).unwrap()
}
