//! Closeness contracts and outward-rounded interval enclosures.
//!
//! Every certification in the crate goes through [`certify_within`]: two
//! quantities are evaluated as [`Interval`]s and then compared against a
//! [`Tolerance`]. Outward rounding is done by stepping each bound a fixed
//! number of ulps away from the rounded result, so no hardware rounding mode
//! is ever touched.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Ulps added on each side of a correctly rounded arithmetic result.
const ARITH_ULPS: u32 = 1;
/// Ulps added on each side of a libm transcendental result.
const TRIG_ULPS: u32 = 2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("non-finite interval endpoint ({lo}, {hi})")]
    NonFinite { lo: f64, hi: f64 },
    #[error("inverted interval: lo {lo} > hi {hi}")]
    Inverted { lo: f64, hi: f64 },
    #[error("tolerance must be nonnegative and not both zero (abs {abs_eps}, rel {rel_eps})")]
    BadTolerance { abs_eps: f64, rel_eps: f64 },
    #[error("division by an interval containing zero: [{lo}, {hi}]")]
    DivisionByZero { lo: f64, hi: f64 },
    #[error("square root of a negative interval: [{lo}, {hi}]")]
    NegativeSqrt { lo: f64, hi: f64 },
}

/// Absolute plus relative closeness contract.
///
/// Two reals `x`, `y` are close when `|x - y| <= abs_eps + rel_eps * max(|x|, |y|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    abs_eps: f64,
    rel_eps: f64,
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self, NumericsError> {
        let ok = abs_eps.is_finite()
            && rel_eps.is_finite()
            && abs_eps >= 0.0
            && rel_eps >= 0.0
            && (abs_eps > 0.0 || rel_eps > 0.0);
        if ok {
            Ok(Self { abs_eps, rel_eps })
        } else {
            Err(NumericsError::BadTolerance { abs_eps, rel_eps })
        }
    }

    /// Purely absolute tolerance.
    pub fn absolute(abs_eps: f64) -> Result<Self, NumericsError> {
        Self::new(abs_eps, 0.0)
    }

    pub fn abs_eps(&self) -> f64 {
        self.abs_eps
    }

    pub fn rel_eps(&self) -> f64 {
        self.rel_eps
    }

    /// Rescales the absolute part, e.g. from "units of the native diameter"
    /// into plain length units.
    pub fn scaled(&self, length: f64) -> Self {
        Self {
            abs_eps: self.abs_eps * length.abs(),
            rel_eps: self.rel_eps,
        }
    }

    /// Scalar form of the closeness test.
    pub fn accepts(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.abs_eps + self.rel_eps * x.abs().max(y.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
        }
    }
}

/// Outcome of an interval-certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertResult {
    CertifiedEqual,
    CertifiedDistinct,
    Undecided,
}

impl CertResult {
    pub fn is_equal(self) -> bool {
        self == CertResult::CertifiedEqual
    }

    /// Conjunction of several claims: any distinct pair makes the whole claim
    /// distinct, and it is only equal when every part is.
    pub fn all<I: IntoIterator<Item = CertResult>>(results: I) -> CertResult {
        let mut out = CertResult::CertifiedEqual;
        for r in results {
            match r {
                CertResult::CertifiedDistinct => return CertResult::CertifiedDistinct,
                CertResult::Undecided => out = CertResult::Undecided,
                CertResult::CertifiedEqual => {}
            }
        }
        out
    }
}

impl fmt::Display for CertResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertResult::CertifiedEqual => "certified-equal",
            CertResult::CertifiedDistinct => "certified-distinct",
            CertResult::Undecided => "undecided",
        })
    }
}

/// Closed interval `[lo, hi]` with finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(mut v: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        v = v.next_down();
    }
    v
}

fn up(mut v: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        v = v.next_up();
    }
    v
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, NumericsError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(NumericsError::NonFinite { lo, hi });
        }
        if lo > hi {
            return Err(NumericsError::Inverted { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// Degenerate interval `[v, v]`.
    ///
    /// # Panics
    /// Panics if `v` is not finite.
    pub fn point(v: f64) -> Self {
        assert!(v.is_finite(), "interval endpoint must be finite, got {v}");
        Self { lo: v, hi: v }
    }

    /// `[v, v]` widened by `ulps` on each side, for values known to carry a
    /// few ulps of rounding (e.g. a libm `atan2`).
    pub fn around(v: f64, ulps: u32) -> Self {
        Interval::widened(v, v, ulps)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        self.lo + 0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    /// Largest magnitude in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Rounded `[lo, hi]` widened outward by `ulps` on each side.
    fn widened(lo: f64, hi: f64, ulps: u32) -> Interval {
        Interval {
            lo: down(lo, ulps),
            hi: up(hi, ulps),
        }
    }

    pub fn sqr(self) -> Interval {
        let (a, b) = (self.lo * self.lo, self.hi * self.hi);
        if self.contains_zero() {
            Interval::widened(0.0, a.max(b), ARITH_ULPS)
        } else {
            Interval::widened(a.min(b), a.max(b), ARITH_ULPS)
        }
    }

    pub fn sqrt(self) -> Result<Interval, NumericsError> {
        if self.hi < 0.0 {
            return Err(NumericsError::NegativeSqrt {
                lo: self.lo,
                hi: self.hi,
            });
        }
        let lo = self.lo.max(0.0).sqrt();
        Ok(Interval::widened(lo, self.hi.sqrt(), ARITH_ULPS))
    }

    pub fn checked_div(self, rhs: Interval) -> Result<Interval, NumericsError> {
        if rhs.contains_zero() {
            return Err(NumericsError::DivisionByZero { lo: rhs.lo, hi: rhs.hi });
        }
        let q = [self.lo / rhs.lo, self.lo / rhs.hi, self.hi / rhs.lo, self.hi / rhs.hi];
        let (lo, hi) = min_max(&q);
        Ok(Interval::widened(lo, hi, ARITH_ULPS))
    }

    pub fn sin(self) -> Interval {
        // sin(±0) is exact
        if self.lo == 0.0 && self.hi == 0.0 {
            return Interval { lo: 0.0, hi: 0.0 };
        }
        enclose_periodic(self, f64::sin, FRAC_PI_2, -FRAC_PI_2)
    }

    pub fn cos(self) -> Interval {
        enclose_periodic(self, f64::cos, 0.0, PI)
    }
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    })
}

/// True when some `phase + 2πk` lies in `[lo, hi]`, erring toward `true` near
/// the boundary.
fn hits_phase(x: Interval, phase: f64) -> bool {
    let u_lo = (x.lo - phase) / TAU;
    let u_hi = (x.hi - phase) / TAU;
    let slack = 1e-12 * (1.0 + u_lo.abs().max(u_hi.abs()));
    (u_lo - slack).ceil() <= (u_hi + slack).floor()
}

fn enclose_periodic(x: Interval, f: fn(f64) -> f64, max_phase: f64, min_phase: f64) -> Interval {
    if x.width() >= TAU {
        return Interval { lo: -1.0, hi: 1.0 };
    }
    let (a, b) = (f(x.lo), f(x.hi));
    let mut out = Interval::widened(a.min(b), a.max(b), TRIG_ULPS);
    if hits_phase(x, max_phase) {
        out.hi = 1.0;
    }
    if hits_phase(x, min_phase) {
        out.lo = -1.0;
    }
    Interval {
        lo: out.lo.max(-1.0),
        hi: out.hi.min(1.0),
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::widened(self.lo + rhs.lo, self.hi + rhs.hi, ARITH_ULPS)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::widened(self.lo - rhs.hi, self.hi - rhs.lo, ARITH_ULPS)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let p = [self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi];
        let (lo, hi) = min_max(&p);
        Interval::widened(lo, hi, ARITH_ULPS)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

/// Enclosure of `sin` over `x` (radians).
pub fn enclose_sin(x: Interval) -> Result<Interval, NumericsError> {
    if !x.lo.is_finite() || !x.hi.is_finite() {
        return Err(NumericsError::NonFinite { lo: x.lo, hi: x.hi });
    }
    Ok(x.sin())
}

/// Certified comparison of two enclosures under `tol`.
///
/// The slack function `|x - y| - rel * max(|x|, |y|)` is linear on every cell
/// cut out of the box `a × b` by the lines `x = ±y`, `x = 0`, `y = 0`, so its
/// extremes are attained at the corners, at the crossings of those lines with
/// the box edges, or at the origin.
pub fn certify_within(a: Interval, b: Interval, tol: Tolerance) -> CertResult {
    let slack = |x: f64, y: f64| (x - y).abs() - tol.rel_eps * x.abs().max(y.abs());
    let mut candidates: Vec<(f64, f64)> = Vec::with_capacity(24);
    for &x in &[a.lo, a.hi] {
        for &y in &[b.lo, b.hi, x, -x, 0.0] {
            if b.contains(y) {
                candidates.push((x, y));
            }
        }
    }
    for &y in &[b.lo, b.hi] {
        for &x in &[y, -y, 0.0] {
            if a.contains(x) {
                candidates.push((x, y));
            }
        }
    }
    if a.contains_zero() && b.contains_zero() {
        candidates.push((0.0, 0.0));
    }
    let (lo, hi) = candidates
        .iter()
        .map(|&(x, y)| slack(x, y))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
    if hi <= tol.abs_eps {
        CertResult::CertifiedEqual
    } else if lo > tol.abs_eps {
        CertResult::CertifiedDistinct
    } else {
        CertResult::Undecided
    }
}
