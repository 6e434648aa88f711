//! Forward construction: trisect each interior angle of a native triangle,
//! intersect the trisectors adjacent to each side, and measure how close the
//! resulting Morley triangle is to equilateral.

use std::f64::consts::FRAC_PI_3;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{distance_enclosure, ray_intersect, GeometryError, Point, Ray, Triangle};
use crate::numerics::{certify_within, CertResult, Interval, Tolerance};
use crate::reverse::{AngleError, AngleTriple};

/// Native angles below this (radians) are rejected; trisector intersections
/// carry no meaningful digits past it.
pub const MIN_NATIVE_ANGLE: f64 = 1e-6;

/// Morley points must have every barycentric coordinate above this.
pub const INTERIOR_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForwardError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("interior angle at vertex {vertex} is {angle:e} rad, below the {MIN_NATIVE_ANGLE:e} rad floor")]
    AngleTooSmall { vertex: char, angle: f64 },
    #[error("trisectors adjacent to the side opposite {opposite} do not meet: {source}")]
    ConstructionFailure {
        opposite: char,
        #[source]
        source: GeometryError,
    },
    #[error(
        "Morley point opposite {opposite} is not strictly inside the native triangle (barycentric {barycentric:?})"
    )]
    NotInterior { opposite: char, barycentric: [f64; 3] },
    #[error("trisector fans do not come from a common triangle")]
    MismatchedFans,
    #[error(transparent)]
    Angles(#[from] AngleError),
}

const NAMES: [char; 3] = ['a', 'b', 'c'];

/// The two trisectors at one vertex. `rays[0]` hugs the side toward the
/// previous vertex (ccw order), `rays[1]` the side toward the next vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrisectorFan {
    pub vertex: Point,
    pub rays: [Ray; 2],
}

impl TrisectorFan {
    /// Ray adjacent to the side toward the previous vertex.
    pub fn toward_previous(&self) -> &Ray {
        &self.rays[0]
    }

    /// Ray adjacent to the side toward the next vertex.
    pub fn toward_next(&self) -> &Ray {
        &self.rays[1]
    }
}

fn check_angles(t: &Triangle) -> Result<[f64; 3], ForwardError> {
    let angles = t.interior_angles();
    for (i, &angle) in angles.iter().enumerate() {
        if angle < MIN_NATIVE_ANGLE {
            return Err(ForwardError::AngleTooSmall {
                vertex: NAMES[i],
                angle,
            });
        }
    }
    Ok(angles)
}

/// Trisector fans at a, b, c of the ccw-normalized `native`.
pub fn trisector_fans(native: &Triangle) -> Result<[TrisectorFan; 3], ForwardError> {
    let (t, _) = native.to_ccw();
    let angles = check_angles(&t)?;
    let v = t.vertices();
    let mut fans = Vec::with_capacity(3);
    for i in 0..3 {
        let (prev, here, next) = (v[(i + 2) % 3], v[i], v[(i + 1) % 3]);
        let third = angles[i] / 3.0;
        // interior sweeps ccw from (next - here) to (prev - here)
        let to_next = (next - here)
            .normalized()
            .ok_or(GeometryError::Degenerate { what: "triangle" })?;
        let to_prev = (prev - here)
            .normalized()
            .ok_or(GeometryError::Degenerate { what: "triangle" })?;
        let near_prev = Ray::new(here, to_prev.rotated(-third))?;
        let near_next = Ray::new(here, to_next.rotated(third))?;
        fans.push(TrisectorFan {
            vertex: here,
            rays: [near_prev, near_next],
        });
    }
    Ok([fans[0], fans[1], fans[2]])
}

/// Intersections of adjacent trisectors, ordered (opposite a, opposite b,
/// opposite c). The point opposite a joins b's trisector nearest bc with c's
/// trisector nearest bc.
pub fn morley_points(fans: &[TrisectorFan; 3]) -> Result<[Point; 3], ForwardError> {
    let verts = fans.map(|f| f.vertex);
    let t = Triangle::new(verts[0], verts[1], verts[2]).map_err(|_| ForwardError::MismatchedFans)?;
    if t.signed_area() <= 0.0 {
        return Err(ForwardError::MismatchedFans);
    }
    let mut out = [Point::ORIGIN; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let from = &fans[(i + 1) % 3];
        let to = &fans[(i + 2) % 3];
        *slot = ray_intersect(from.toward_next(), to.toward_previous()).map_err(|source| {
            ForwardError::ConstructionFailure {
                opposite: NAMES[i],
                source,
            }
        })?;
    }
    Ok(out)
}

/// Native triangle with its trisectors and the candidate Morley triangle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorleyConfig {
    pub native: Triangle,
    pub fans: [TrisectorFan; 3],
    pub morley_points: [Point; 3],
    pub t: Triangle,
    pub angle_triple: AngleTriple,
}

impl MorleyConfig {
    /// Full forward construction. The native triangle is stored ccw.
    pub fn construct(native: &Triangle) -> Result<Self, ForwardError> {
        let (native, _) = native.to_ccw();
        let angles = check_angles(&native)?;
        let fans = trisector_fans(&native)?;
        let points = morley_points(&fans)?;
        for (i, p) in points.iter().enumerate() {
            let bary = native.barycentric(*p);
            if bary.iter().any(|&w| !(w > INTERIOR_MARGIN)) {
                return Err(ForwardError::NotInterior {
                    opposite: NAMES[i],
                    barycentric: bary,
                });
            }
        }
        let t = Triangle::new(points[0], points[1], points[2])?;
        let angle_triple = AngleTriple::from_native_angles(angles)?;
        Ok(Self {
            native,
            fans,
            morley_points: points,
            t,
            angle_triple,
        })
    }

    pub fn report(&self, tol: Tolerance) -> EquilateralReport {
        equilateral_report(&self.t, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilateralReport {
    pub side_lengths: [f64; 3],
    pub side_enclosures: [Interval; 3],
    pub max_relative_side_deviation: f64,
    pub angles: [f64; 3],
    /// Largest `|angle - π/3|`.
    pub max_angle_deviation: f64,
    pub verdict: CertResult,
}

/// Side/angle spread of `t`, with an interval-certified verdict on whether
/// all three sides agree under `tol`.
pub fn equilateral_report(t: &Triangle, tol: Tolerance) -> EquilateralReport {
    let [a, b, c] = t.vertices();
    let side_lengths = t.side_lengths();
    let side_enclosures = [
        distance_enclosure(b, c),
        distance_enclosure(c, a),
        distance_enclosure(a, b),
    ];
    let longest = side_lengths.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let shortest = side_lengths.iter().cloned().fold(f64::INFINITY, f64::min);
    let angles = t.interior_angles();
    let max_angle_deviation = angles.iter().map(|x| (x - FRAC_PI_3).abs()).fold(0.0, f64::max);
    let verdict = CertResult::all([
        certify_within(side_enclosures[0], side_enclosures[1], tol),
        certify_within(side_enclosures[1], side_enclosures[2], tol),
        certify_within(side_enclosures[0], side_enclosures[2], tol),
    ]);
    EquilateralReport {
        side_lengths,
        side_enclosures,
        max_relative_side_deviation: (longest - shortest) / longest,
        angles,
        max_angle_deviation,
        verdict,
    }
}
