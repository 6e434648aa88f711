//! Planar primitives: points, rays, triangles, and direct/reflecting
//! similarities, plus the law-of-sines residual used as an oracle by the
//! forward and reverse constructions.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::Interval;

/// Two ray directions closer than this (radians, via the sine of the angle
/// between them) are treated as parallel.
pub const PARALLEL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate {what}")]
    Degenerate { what: &'static str },
    #[error("non-finite coordinate in {what}")]
    NonFinite { what: &'static str },
    #[error("rays are parallel; no intersection")]
    Parallel,
    #[error("rays cross behind an origin (t1 = {t1}, t2 = {t2})")]
    Backward { t1: f64, t2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// Free 2-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_vec(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (other - self).length()
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at `angle` radians from the +x axis.
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, s)
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let len = self.length();
        (len > 0.0 && len.is_finite()).then(|| self * (1.0 / len))
    }
}

/// Outward-rounded enclosure of `|pq|`.
pub fn distance_enclosure(p: Point, q: Point) -> Interval {
    let dx = Interval::point(q.x) - Interval::point(p.x);
    let dy = Interval::point(q.y) - Interval::point(p.y);
    (dx.sqr() + dy.sqr())
        .sqrt()
        .expect("sum of squares encloses a nonnegative value")
}

/// Unsigned angle between two vectors, in `[0, π]`.
pub fn angle_between(u: Vec2, v: Vec2) -> f64 {
    u.cross(v).abs().atan2(u.dot(v))
}

impl Sub for Point {
    type Output = Vec2;
    fn sub(self, o: Point) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Add<Vec2> for Point {
    type Output = Point;
    fn add(self, v: Vec2) -> Point {
        Point::new(self.x + v.x, self.y + v.y)
    }
}

impl Sub<Vec2> for Point {
    type Output = Point;
    fn sub(self, v: Vec2) -> Point {
        Point::new(self.x - v.x, self.y - v.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    origin: Point,
    direction: Vec2,
}

impl Ray {
    /// Ray from `origin` along `direction`, which is normalized here.
    pub fn new(origin: Point, direction: Vec2) -> Result<Self, GeometryError> {
        if !origin.is_finite() {
            return Err(GeometryError::NonFinite { what: "ray origin" });
        }
        let direction = direction
            .normalized()
            .ok_or(GeometryError::Degenerate { what: "ray direction" })?;
        Ok(Self { origin, direction })
    }

    pub fn from_angle(origin: Point, angle: f64) -> Result<Self, GeometryError> {
        Self::new(origin, Vec2::from_angle(angle))
    }

    pub fn through(origin: Point, target: Point) -> Result<Self, GeometryError> {
        Self::new(origin, target - origin)
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn direction(&self) -> Vec2 {
        self.direction
    }

    pub fn at(&self, t: f64) -> Point {
        self.origin + self.direction * t
    }

    /// Distance from `p` to the supporting line.
    pub fn line_distance(&self, p: Point) -> f64 {
        self.direction.cross(p - self.origin).abs()
    }
}

/// Forward intersection of two rays.
pub fn ray_intersect(r1: &Ray, r2: &Ray) -> Result<Point, GeometryError> {
    let (d1, d2) = (r1.direction, r2.direction);
    let denom = d1.cross(d2);
    if denom.abs() <= PARALLEL_EPS {
        return Err(GeometryError::Parallel);
    }
    let w = r2.origin - r1.origin;
    let t1 = w.cross(d2) / denom;
    let t2 = w.cross(d1) / denom;
    if t1 <= 0.0 || t2 <= 0.0 {
        return Err(GeometryError::Backward { t1, t2 });
    }
    // average the two parametrizations to split the rounding error
    let p1 = r1.at(t1);
    let p2 = r2.at(t2);
    Ok(p1.lerp(p2, 0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Non-degenerate triangle. Vertex order is kept as given; `orientation`
/// records the sign of the signed area. Use [`Triangle::to_ccw`] for the
/// normalized form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    a: Point,
    b: Point,
    c: Point,
    orientation: Orientation,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self, GeometryError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeometryError::NonFinite { what: "triangle" });
        }
        let area2 = (b - a).cross(c - a);
        let scale = (b - a).length().max((c - a).length()).max((c - b).length());
        // zero or negligible area relative to the squared size
        if !(area2.abs() > 1e-14 * scale * scale) {
            return Err(GeometryError::Degenerate { what: "triangle" });
        }
        let orientation = if area2 > 0.0 { Orientation::Ccw } else { Orientation::Cw };
        Ok(Self { a, b, c, orientation })
    }

    pub fn from_coords(coords: [(f64, f64); 3]) -> Result<Self, GeometryError> {
        let [a, b, c] = coords.map(|(x, y)| Point::new(x, y));
        Self::new(a, b, c)
    }

    /// Counter-clockwise copy. The flag is true when `b` and `c` were swapped.
    pub fn to_ccw(&self) -> (Triangle, bool) {
        match self.orientation {
            Orientation::Ccw => (*self, false),
            Orientation::Cw => (
                Triangle {
                    a: self.a,
                    b: self.c,
                    c: self.b,
                    orientation: Orientation::Ccw,
                },
                true,
            ),
        }
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn c(&self) -> Point {
        self.c
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * (self.b - self.a).cross(self.c - self.a)
    }

    /// Side lengths opposite a, b, c.
    pub fn side_lengths(&self) -> [f64; 3] {
        [
            self.b.distance(self.c),
            self.c.distance(self.a),
            self.a.distance(self.b),
        ]
    }

    /// Longest side length.
    pub fn diameter(&self) -> f64 {
        let [x, y, z] = self.side_lengths();
        x.max(y).max(z)
    }

    pub fn centroid(&self) -> Point {
        Point::new(
            (self.a.x + self.b.x + self.c.x) / 3.0,
            (self.a.y + self.b.y + self.c.y) / 3.0,
        )
    }

    /// Interior angles at a, b, c in radians.
    pub fn interior_angles(&self) -> [f64; 3] {
        let [a, b, c] = self.vertices();
        [
            angle_between(b - a, c - a),
            angle_between(c - b, a - b),
            angle_between(a - c, b - c),
        ]
    }

    /// Barycentric coordinates of `p` with respect to (a, b, c).
    pub fn barycentric(&self, p: Point) -> [f64; 3] {
        let area2 = (self.b - self.a).cross(self.c - self.a);
        [
            (self.c - self.b).cross(p - self.b) / area2,
            (self.a - self.c).cross(p - self.c) / area2,
            (self.b - self.a).cross(p - self.a) / area2,
        ]
    }

    pub fn map(&self, s: &Similarity) -> Result<Triangle, GeometryError> {
        Triangle::new(s.apply(self.a), s.apply(self.b), s.apply(self.c))
    }
}

/// Interior angles at a, b, c in radians.
pub fn interior_angles(t: &Triangle) -> [f64; 3] {
    t.interior_angles()
}

/// Largest disagreement between the three `sin(angle) / opposite side`
/// ratios, scaled by the diameter so the result is dimensionless.
pub fn law_of_sines_residual(t: &Triangle) -> f64 {
    let angles = t.interior_angles();
    let sides = t.side_lengths();
    let r: Vec<f64> = (0..3).map(|i| angles[i].sin() / sides[i]).collect();
    let worst = (r[0] - r[1]).abs().max((r[1] - r[2]).abs()).max((r[0] - r[2]).abs());
    worst * t.diameter()
}

/// `p ↦ scale·R(rotation)·(reflect ? conj(p) : p) + translation`, with
/// reflection across the x axis applied first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    scale: f64,
    rotation: f64,
    translation: Vec2,
    reflect: bool,
}

impl Similarity {
    pub fn new(scale: f64, rotation: f64, translation: Vec2, reflect: bool) -> Result<Self, GeometryError> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(GeometryError::Degenerate {
                what: "similarity scale",
            });
        }
        if !(rotation.is_finite() && translation.x.is_finite() && translation.y.is_finite()) {
            return Err(GeometryError::NonFinite { what: "similarity" });
        }
        Ok(Self {
            scale,
            rotation: wrap_angle(rotation),
            translation,
            reflect,
        })
    }

    pub fn identity() -> Self {
        Self {
            scale: 1.0,
            rotation: 0.0,
            translation: Vec2::default(),
            reflect: false,
        }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn translation(&self) -> Vec2 {
        self.translation
    }

    pub fn reflect(&self) -> bool {
        self.reflect
    }

    fn linear(&self, v: Vec2) -> Vec2 {
        let v = if self.reflect { Vec2::new(v.x, -v.y) } else { v };
        v.rotated(self.rotation) * self.scale
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::ORIGIN + self.linear(p.to_vec()) + self.translation
    }

    pub fn inverse(&self) -> Similarity {
        // forward: p -> s R F p + t; inverse: q -> F R^-1 (q - t) / s
        let inv_scale = 1.0 / self.scale;
        if self.reflect {
            // F R(-θ) = R(θ) F
            let lin = |v: Vec2| Vec2::new(v.x, -v.y).rotated(self.rotation) * inv_scale;
            let translation = -lin(self.translation);
            Similarity {
                scale: inv_scale,
                rotation: self.rotation,
                translation,
                reflect: true,
            }
        } else {
            let rotation = wrap_angle(-self.rotation);
            let translation = -(self.translation.rotated(rotation) * inv_scale);
            Similarity {
                scale: inv_scale,
                rotation,
                translation,
                reflect: false,
            }
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Similarity) -> Similarity {
        let rotation = if self.reflect {
            self.rotation - other.rotation
        } else {
            self.rotation + other.rotation
        };
        Similarity {
            scale: self.scale * other.scale,
            rotation: wrap_angle(rotation),
            translation: self.linear(other.translation) + self.translation,
            reflect: self.reflect != other.reflect,
        }
    }
}

fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

fn correspondence(p1: Point, p2: Point, q1: Point, q2: Point, reflect: bool) -> Result<Similarity, GeometryError> {
    let flip = |p: Point| if reflect { Point::new(p.x, -p.y) } else { p };
    let (p1f, p2f) = (flip(p1), flip(p2));
    let dp = p2f - p1f;
    let dq = q2 - q1;
    let magnitude = p1.to_vec().length().max(p2.to_vec().length()).max(1.0);
    let target_mag = q1.to_vec().length().max(q2.to_vec().length()).max(1.0);
    if dp.length() <= 1e-12 * magnitude {
        return Err(GeometryError::Degenerate {
            what: "source correspondence pair",
        });
    }
    if dq.length() <= 1e-12 * target_mag {
        return Err(GeometryError::Degenerate {
            what: "target correspondence pair",
        });
    }
    let scale = dq.length() / dp.length();
    let rotation = dq.angle() - dp.angle();
    let mapped_p1 = p1f.to_vec().rotated(rotation) * scale;
    let translation = q1.to_vec() - mapped_p1;
    Similarity::new(scale, rotation, translation, reflect)
}

/// Direct similarity taking `p1 ↦ q1` and `p2 ↦ q2`.
pub fn similarity_from_correspondence(p1: Point, p2: Point, q1: Point, q2: Point) -> Result<Similarity, GeometryError> {
    correspondence(p1, p2, q1, q2, false)
}

/// Orientation-reversing similarity taking `p1 ↦ q1` and `p2 ↦ q2`.
pub fn reflecting_similarity_from_correspondence(
    p1: Point,
    p2: Point,
    q1: Point,
    q2: Point,
) -> Result<Similarity, GeometryError> {
    correspondence(p1, p2, q1, q2, true)
}
