//! Recovering a pair of acute angles from their sum and the ratio of their
//! sines.
//!
//! For a fixed sum `s`, `α ↦ sin α / sin(s − α)` is strictly increasing while
//! both angles stay acute: the numerator grows and the denominator shrinks.
//! That makes the inverse unique, and bisection on the admissible bracket
//! always converges.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{certify_within, CertResult, Interval, Tolerance};

/// Hard cap on bisection steps.
pub const MAX_BISECTIONS: usize = 80;

/// Bracket endpoints are pulled inward by this much (radians).
pub const BRACKET_INSET: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TusiError {
    #[error("sum {sum} rad outside (0, π)")]
    BadSum { sum: f64 },
    #[error("ratio {ratio} must be positive and finite")]
    BadRatio { ratio: f64 },
    #[error("angle {alpha} rad not admissible for sum {sum} rad (both parts must be acute and positive)")]
    NotAdmissible { alpha: f64, sum: f64 },
    #[error("admissible interval for sum {sum} rad is empty")]
    EmptyBracket { sum: f64 },
    #[error("ratio {ratio} outside the attainable range ({min}, {max})")]
    NoSolution { ratio: f64, min: f64, max: f64 },
    #[error("angle pair ({0}, {1}) is not a pair of proper acute angles")]
    NotAcute(f64, f64),
}

/// Sum and sine ratio of an unknown acute pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TusiProblem {
    sum: f64,
    ratio: f64,
}

impl TusiProblem {
    pub fn new(sum: f64, ratio: f64) -> Result<Self, TusiError> {
        if !(sum > 0.0 && sum < PI) {
            return Err(TusiError::BadSum { sum });
        }
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Err(TusiError::BadRatio { ratio });
        }
        Ok(Self { sum, ratio })
    }

    pub fn from_degrees(sum_deg: f64, ratio: f64) -> Result<Self, TusiError> {
        Self::new(sum_deg.to_radians(), ratio)
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// Open interval of `α` for which both `α` and `sum − α` are acute.
    pub fn admissible(&self) -> (f64, f64) {
        ((self.sum - FRAC_PI_2).max(0.0), self.sum.min(FRAC_PI_2))
    }
}

fn admissible(alpha: f64, sum: f64) -> bool {
    let beta = sum - alpha;
    alpha > 0.0 && beta > 0.0 && alpha < FRAC_PI_2 && beta < FRAC_PI_2
}

/// `sin(α) / sin(s − α)`.
pub fn sine_ratio(alpha: f64, sum: f64) -> Result<f64, TusiError> {
    if !admissible(alpha, sum) {
        return Err(TusiError::NotAdmissible { alpha, sum });
    }
    Ok(alpha.sin() / (sum - alpha).sin())
}

/// Bisection for the unique acute pair with the given sum and sine ratio.
/// Iterates until the bracket is no wider than `tol.abs_eps()` (radians).
pub fn solve_tusi(p: &TusiProblem, tol: Tolerance) -> Result<(f64, f64), TusiError> {
    let (lo, hi) = p.admissible();
    let (mut lo, mut hi) = (lo + BRACKET_INSET, hi - BRACKET_INSET);
    if !(lo < hi) {
        return Err(TusiError::EmptyBracket { sum: p.sum });
    }
    let target = p.ratio.ln();
    let residual = |alpha: f64| -> Result<f64, TusiError> { Ok(sine_ratio(alpha, p.sum)?.ln() - target) };
    let (f_lo, f_hi) = (residual(lo)?, residual(hi)?);
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(TusiError::NoSolution {
            ratio: p.ratio,
            min: sine_ratio(lo, p.sum)?,
            max: sine_ratio(hi, p.sum)?,
        });
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol.abs_eps() {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = residual(mid)?;
        if f == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = lo + 0.5 * (hi - lo);
    Ok((alpha, p.sum - alpha))
}

/// Which part of the lemma's hypothesis an input pair fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    Met,
    SumsDiffer,
    RatiosDiffer,
    /// The enclosures could not decide whether sums or ratios agree.
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub hypothesis: Hypothesis,
    pub sum_difference: f64,
    pub ratio_difference: f64,
    pub angle_differences: (f64, f64),
    /// `certified-equal` when the hypothesis holds and the components agree;
    /// `certified-distinct` when the hypothesis holds but the components
    /// differ (a counterexample); `undecided` otherwise.
    pub verdict: CertResult,
}

impl UniquenessReport {
    pub fn is_counterexample(&self) -> bool {
        self.hypothesis == Hypothesis::Met && self.verdict == CertResult::CertifiedDistinct
    }
}

fn ratio_enclosure(a: f64, b: f64) -> Interval {
    Interval::point(a)
        .sin()
        .checked_div(Interval::point(b).sin())
        .expect("sine of an acute angle is positive")
}

/// How far apart the components may sit when sums and ratios agree only up
/// to `tol`: `dα ≤ dr / (∂r/∂α) + ds`, since `∂α/∂s` lies in `[0, 1]` for
/// acute pairs.
fn angle_slack(pair1: (f64, f64), pair2: (f64, f64), ratio: f64, tol: Tolerance) -> f64 {
    let slope = |(a, b): (f64, f64)| (a + b).sin() / (b.sin() * b.sin());
    let ratio_tol = tol.abs_eps() + tol.rel_eps() * ratio;
    let sum_tol = tol.abs_eps() + tol.rel_eps() * (pair1.0 + pair1.1).max(pair2.0 + pair2.1);
    tol.abs_eps() + ratio_tol / slope(pair1).min(slope(pair2)) + sum_tol
}

/// Checks the uniqueness claim on two concrete acute pairs: if the sums and
/// sine ratios agree under `tol`, the components must agree too.
pub fn uniqueness_check(pair1: (f64, f64), pair2: (f64, f64), tol: Tolerance) -> Result<UniquenessReport, TusiError> {
    for &(a, b) in &[pair1, pair2] {
        let acute = |x: f64| x > 0.0 && x < FRAC_PI_2;
        if !(acute(a) && acute(b)) {
            return Err(TusiError::NotAcute(a, b));
        }
    }
    let sum1 = Interval::point(pair1.0) + Interval::point(pair1.1);
    let sum2 = Interval::point(pair2.0) + Interval::point(pair2.1);
    let r1 = ratio_enclosure(pair1.0, pair1.1);
    let r2 = ratio_enclosure(pair2.0, pair2.1);
    let sums = certify_within(sum1, sum2, tol);
    let ratios = certify_within(r1, r2, tol);
    let hypothesis = match (sums, ratios) {
        (CertResult::CertifiedDistinct, _) => Hypothesis::SumsDiffer,
        (_, CertResult::CertifiedDistinct) => Hypothesis::RatiosDiffer,
        (CertResult::CertifiedEqual, CertResult::CertifiedEqual) => Hypothesis::Met,
        _ => Hypothesis::Undecided,
    };
    let verdict = if hypothesis == Hypothesis::Met {
        let angle_tol = Tolerance::absolute(angle_slack(pair1, pair2, r1.mag().max(r2.mag()), tol))
            .expect("slack is positive and finite");
        CertResult::all([
            certify_within(Interval::point(pair1.0), Interval::point(pair2.0), angle_tol),
            certify_within(Interval::point(pair1.1), Interval::point(pair2.1), angle_tol),
        ])
    } else {
        CertResult::Undecided
    };
    Ok(UniquenessReport {
        hypothesis,
        sum_difference: (pair1.0 + pair1.1) - (pair2.0 + pair2.1),
        ratio_difference: r1.mid() - r2.mid(),
        angle_differences: (pair1.0 - pair2.0, pair1.1 - pair2.1),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    fn tight() -> Tolerance {
        Tolerance::absolute(1e-13).unwrap()
    }

    #[test]
    fn sine_ratio_examples() {
        assert!((sine_ratio(deg(25.0), deg(50.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((sine_ratio(deg(40.0), deg(60.0)).unwrap() - 1.879_385_241_571_816_8).abs() < 1e-14);
        assert!((sine_ratio(deg(60.0), deg(90.0)).unwrap() - 1.732_050_807_568_877_3).abs() < 1e-14);
    }

    #[test]
    fn sine_ratio_rejects_non_acute() {
        assert!(sine_ratio(deg(100.0), deg(120.0)).is_err());
        assert!(sine_ratio(deg(10.0), deg(120.0)).is_err());
        assert!(sine_ratio(0.0, deg(30.0)).is_err());
        assert!(sine_ratio(deg(30.0), deg(30.0)).is_err());
    }

    #[test]
    fn solve_examples() {
        let (a, b) = solve_tusi(&TusiProblem::from_degrees(40.0, 1.0).unwrap(), tight()).unwrap();
        assert!((a - deg(20.0)).abs() < 1e-12 && (b - deg(20.0)).abs() < 1e-12);

        let r = sine_ratio(deg(40.0), deg(60.0)).unwrap();
        let (a, b) = solve_tusi(&TusiProblem::new(deg(60.0), r).unwrap(), tight()).unwrap();
        assert!((a - deg(40.0)).abs() < 1e-10 && (b - deg(20.0)).abs() < 1e-10);

        // sin 30° / sin 20°
        let p = TusiProblem::from_degrees(50.0, 1.461_902_200_081_543_6).unwrap();
        let (a, b) = solve_tusi(&p, tight()).unwrap();
        assert!((a - deg(30.0)).abs() < 1e-10 && (b - deg(20.0)).abs() < 1e-10);
        assert_eq!(a + b, p.sum());
    }

    #[test]
    fn bracket_width_follows_tolerance() {
        let p = TusiProblem::from_degrees(50.0, 1.3).unwrap();
        let coarse = solve_tusi(&p, Tolerance::absolute(1e-3).unwrap()).unwrap().0;
        let fine = solve_tusi(&p, tight()).unwrap().0;
        assert!((coarse - fine).abs() <= 1e-3);
    }

    #[test]
    fn unreachable_ratio() {
        // s = 30°: ratio ranges over (0, ∞) since both ends hit sin 0
        assert!(solve_tusi(&TusiProblem::from_degrees(30.0, 1e6).unwrap(), tight()).is_ok());
        // s = 150°: α ∈ (60°, 90°), ratio in (sin 60°/sin 90°, sin 90°/sin 60°)
        let err = solve_tusi(&TusiProblem::from_degrees(150.0, 3.0).unwrap(), tight()).unwrap_err();
        assert!(matches!(err, TusiError::NoSolution { .. }));
    }

    #[test]
    fn problem_validation() {
        assert!(TusiProblem::new(0.0, 1.0).is_err());
        assert!(TusiProblem::new(PI, 1.0).is_err());
        assert!(TusiProblem::new(1.0, 0.0).is_err());
        assert!(TusiProblem::new(1.0, f64::INFINITY).is_err());
        let err = solve_tusi(&TusiProblem::new(1e-12, 1.0).unwrap(), tight()).unwrap_err();
        assert!(matches!(err, TusiError::EmptyBracket { .. }));
    }

    #[test]
    fn uniqueness_examples() {
        let tol = Tolerance::default();
        let r = uniqueness_check((deg(20.0), deg(20.0)), (deg(20.0), deg(20.0)), tol).unwrap();
        assert_eq!(r.verdict, CertResult::CertifiedEqual);

        let r = uniqueness_check((deg(30.0), deg(20.0)), (deg(25.0), deg(25.0)), tol).unwrap();
        assert_eq!(r.hypothesis, Hypothesis::RatiosDiffer);
        assert!(!r.is_counterexample());
        assert!((r.ratio_difference - 0.461_902_200_081_543_6).abs() < 1e-12);

        let r = uniqueness_check((deg(30.0), deg(20.0)), (deg(30.0) + 1e-13, deg(20.0) - 1e-13), tol).unwrap();
        assert_eq!(r.hypothesis, Hypothesis::Met);
        assert_eq!(r.verdict, CertResult::CertifiedEqual);
    }

    #[test]
    fn uniqueness_sum_mismatch_and_domain() {
        let tol = Tolerance::default();
        let r = uniqueness_check((deg(30.0), deg(20.0)), (deg(30.0), deg(25.0)), tol).unwrap();
        assert_eq!(r.hypothesis, Hypothesis::SumsDiffer);
        assert!(uniqueness_check((deg(95.0), deg(20.0)), (deg(30.0), deg(25.0)), tol).is_err());
        assert!(uniqueness_check((deg(30.0), 0.0), (deg(30.0), deg(25.0)), tol).is_err());
    }
}
