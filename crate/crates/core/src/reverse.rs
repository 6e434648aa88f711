//! Reverse construction.
//!
//! Starting from an equilateral triangle `W` and trisected angles
//! `(α, β, γ)` with `α + β + γ = 60°`, erect on each side of `W` a "dashed"
//! triangle whose angles are fixed by the labels, join the far vertices, and
//! check that the resulting outer triangles and the large triangle they bound
//! carry exactly the angles of a native triangle with angles `(3α, 3β, 3γ)`.
//! A similarity fitted onto a concrete native then has to carry `W` onto the
//! forward-constructed Morley triangle.
//!
//! Layout: `W` has its top side horizontal with the left vertex at the
//! origin and its interior below. Stored ccw as (top-left, bottom,
//! top-right).

use std::f64::consts::{FRAC_PI_3, PI};

use serde::Serialize;
use thiserror::Error;

use crate::forward::{ForwardError, MorleyConfig};
use crate::geometry::{
    reflecting_similarity_from_correspondence, similarity_from_correspondence, GeometryError, Point, Similarity,
    Triangle, Vec2,
};
use crate::numerics::{CertResult, Tolerance};
use crate::tusi::{uniqueness_check, Hypothesis, UniquenessReport};

/// Tolerance on the angle-sum identities (radians).
pub const IDENTITY_EPS: f64 = 1e-12;

/// Fit residual bound, in units of the native diameter.
pub const FIT_EPS: f64 = 1e-9;

/// Tolerance on `AngleTriple` sums (radians).
pub const TRIPLE_SUM_EPS: f64 = 1e-12;

const TWO_THIRDS_PI: f64 = 2.0 * PI / 3.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AngleError {
    #[error("angle {name} = {value} rad is outside (0, π/3)")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("angles sum to {sum} rad instead of π/3")]
    BadSum { sum: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReverseError {
    #[error(transparent)]
    Angles(#[from] AngleError),
    #[error("side length z = {0} must be positive and finite")]
    BadScale(f64),
    #[error("construction inconsistency in {what}: residual {residual:e}")]
    Inconsistent { what: &'static str, residual: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("angle triple does not match one third of the native angles (worst gap {gap:e} rad)")]
    AngleMismatch { gap: f64 },
    #[error("dilatation fit failed: {what} residual {residual:e} exceeds {FIT_EPS:e} of the native diameter")]
    FitFailure { what: &'static str, residual: f64 },
    #[error(transparent)]
    Forward(#[from] ForwardError),
}

/// Trisected native angles `(α, β, γ)` in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleTriple {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl AngleTriple {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, AngleError> {
        for (name, value) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(value > 0.0 && value < FRAC_PI_3) {
                return Err(AngleError::OutOfRange { name, value });
            }
        }
        let sum = alpha + beta + gamma;
        if (sum - FRAC_PI_3).abs() > TRIPLE_SUM_EPS {
            return Err(AngleError::BadSum { sum });
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn from_degrees(alpha: f64, beta: f64, gamma: f64) -> Result<Self, AngleError> {
        Self::new(alpha.to_radians(), beta.to_radians(), gamma.to_radians())
    }

    /// One third of each native interior angle.
    pub fn from_native_angles(angles: [f64; 3]) -> Result<Self, AngleError> {
        Self::new(angles[0] / 3.0, angles[1] / 3.0, angles[2] / 3.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// `(α, β, γ) → (β, γ, α)`.
    pub fn cycled(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.gamma,
            gamma: self.alpha,
        }
    }
}

/// The two dashed triangles erected at one vertex of `W`, plus the outer
/// triangle they close off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Erected {
    far_prev: Point,
    far_next: Point,
    dashed_prev: Triangle,
    dashed_next: Triangle,
}

/// Dashed triangles at `apex` on the sides toward `prev` and `next` (ccw
/// neighbours in `W`). The one toward `prev` has far angle `far_prev`, angle
/// `far_next + 60°` at the apex and `apex_label + 60°` at `prev`; the other
/// is its mirror. Far vertices are placed by the law of sines from the apex.
fn erect(
    apex: Point,
    prev: Point,
    next: Point,
    far_prev: f64,
    far_next: f64,
    apex_label: f64,
) -> Result<Erected, ReverseError> {
    let z = apex.distance(prev);
    let at_side = apex_label + FRAC_PI_3;
    // the interior of W at the apex sweeps ccw from (next - apex) to (prev - apex)
    let to_prev = (prev - apex).angle();
    let to_next = (next - apex).angle();
    let len_prev = z * at_side.sin() / far_prev.sin();
    let len_next = z * at_side.sin() / far_next.sin();
    let far_prev_pt = apex + Vec2::from_angle(to_prev + far_next + FRAC_PI_3) * len_prev;
    let far_next_pt = apex + Vec2::from_angle(to_next - far_prev - FRAC_PI_3) * len_next;
    let dashed_prev = Triangle::new(apex, prev, far_prev_pt)?;
    let dashed_next = Triangle::new(apex, next, far_next_pt)?;
    // the subtended angles at the W-side vertices must come out as labelled
    for (t, what) in [
        (dashed_prev, "subtended angle (prev side)"),
        (dashed_next, "subtended angle (next side)"),
    ] {
        let measured = t.interior_angles()[1];
        let residual = (measured - at_side).abs();
        if residual > IDENTITY_EPS {
            return Err(ReverseError::Inconsistent { what, residual });
        }
    }
    Ok(Erected {
        far_prev: far_prev_pt,
        far_next: far_next_pt,
        dashed_prev,
        dashed_next,
    })
}

/// Equilateral `W` with side `z`, stored ccw as (top-left, bottom, top-right).
fn abstract_equilateral(z: f64) -> Result<Triangle, ReverseError> {
    let left = Point::ORIGIN;
    let right = Point::new(z, 0.0);
    // bottom vertex: rotate the top side about its left end by -60°
    let bottom = left + (right - left).rotated(-FRAC_PI_3);
    Ok(Triangle::new(left, bottom, right)?)
}

/// `W` with the two dashed triangles on its lower sides and the lowest
/// triangle they close off.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReverseFigure {
    pub angles: AngleTriple,
    pub z: f64,
    /// (top-left, bottom, top-right), ccw.
    pub w: Triangle,
    /// On side top-left → bottom; far angle β at `far_left`.
    pub dashed_left: Triangle,
    /// On side top-right → bottom; far angle α at `far_right`.
    pub dashed_right: Triangle,
    pub far_left: Point,
    pub far_right: Point,
    /// Lowest triangle (far_left, far_right, bottom of W), ccw.
    pub outer: Triangle,
    /// Side opposite α′ (bottom → far_left), by the law of sines.
    pub x: f64,
    /// Side opposite β′ (bottom → far_right), by the law of sines.
    pub y: f64,
    /// Angle of the lowest triangle at `far_right`, measured.
    pub alpha_prime: f64,
    /// Angle of the lowest triangle at `far_left`, measured.
    pub beta_prime: f64,
    /// Angle of the lowest triangle at the bottom of W, measured.
    pub top_angle: f64,
}

impl ReverseFigure {
    pub fn top_left(&self) -> Point {
        self.w.a()
    }

    pub fn bottom(&self) -> Point {
        self.w.b()
    }

    pub fn top_right(&self) -> Point {
        self.w.c()
    }
}

pub fn build_reverse_figure(angles: AngleTriple, z: f64) -> Result<ReverseFigure, ReverseError> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(ReverseError::BadScale(z));
    }
    let AngleTriple { alpha, beta, gamma } = angles;
    let w = abstract_equilateral(z)?;
    let [left, bottom, right] = w.vertices();
    let e = erect(bottom, left, right, beta, alpha, gamma)?;

    let x = z * (gamma + FRAC_PI_3).sin() / beta.sin();
    let y = z * (gamma + FRAC_PI_3).sin() / alpha.sin();

    let outer = Triangle::new(e.far_prev, e.far_next, bottom)?;
    let [beta_prime, alpha_prime, top_angle] = outer.interior_angles();

    let top_residual = (top_angle - (gamma + TWO_THIRDS_PI)).abs();
    if top_residual > IDENTITY_EPS {
        return Err(ReverseError::Inconsistent {
            what: "top angle",
            residual: top_residual,
        });
    }
    let sum_residual = ((alpha_prime + beta_prime) - (alpha + beta)).abs();
    if sum_residual > IDENTITY_EPS {
        return Err(ReverseError::Inconsistent {
            what: "companion angle sum",
            residual: sum_residual,
        });
    }

    Ok(ReverseFigure {
        angles,
        z,
        w,
        dashed_left: e.dashed_prev,
        dashed_right: e.dashed_next,
        far_left: e.far_prev,
        far_right: e.far_next,
        outer,
        x,
        y,
        alpha_prime,
        beta_prime,
        top_angle,
    })
}

/// Residuals of the sine-ratio chain and the resulting uniqueness verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompanionReport {
    /// `sin α / sin β`.
    pub sine_ratio: f64,
    /// `x / y`.
    pub side_ratio: f64,
    /// `sin α′ / sin β′`.
    pub companion_ratio: f64,
    /// `|sin α / sin β − x / y|`.
    pub ratio_residual: f64,
    /// `|x / y − sin α′ / sin β′|`.
    pub companion_residual: f64,
    /// `(α′ + β′) − (α + β)`.
    pub sum_residual: f64,
    pub alpha_difference: f64,
    pub beta_difference: f64,
    pub uniqueness: UniquenessReport,
    pub verdict: CertResult,
}

/// Chains `sin α / sin β = x / y = sin α′ / sin β′` and, together with the
/// equal sums, feeds both pairs to the uniqueness check.
pub fn check_companion_equality(fig: &ReverseFigure, tol: Tolerance) -> Result<CompanionReport, ReverseError> {
    let AngleTriple { alpha, beta, .. } = fig.angles;
    let sine_ratio = alpha.sin() / beta.sin();
    let side_ratio = fig.x / fig.y;
    let companion_ratio = fig.alpha_prime.sin() / fig.beta_prime.sin();
    let uniqueness = uniqueness_check((alpha, beta), (fig.alpha_prime, fig.beta_prime), tol).map_err(|_| {
        ReverseError::Inconsistent {
            what: "companion angles not acute",
            residual: fig.alpha_prime.max(fig.beta_prime),
        }
    })?;
    let verdict = if uniqueness.hypothesis == Hypothesis::Met {
        uniqueness.verdict
    } else {
        CertResult::Undecided
    };
    Ok(CompanionReport {
        sine_ratio,
        side_ratio,
        companion_ratio,
        ratio_residual: (sine_ratio - side_ratio).abs(),
        companion_residual: (side_ratio - companion_ratio).abs(),
        sum_residual: (fig.alpha_prime + fig.beta_prime) - (alpha + beta),
        alpha_difference: alpha - fig.alpha_prime,
        beta_difference: beta - fig.beta_prime,
        uniqueness,
        verdict,
    })
}

/// `W`, the three outer triangles around it, and the large triangle bounded
/// by their longest sides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssembledFigure {
    pub angles: AngleTriple,
    pub w: Triangle,
    /// Dashed triangles on the three sides of `W`: (left, right, top).
    pub dashed: [Triangle; 3],
    /// Outer triangles with apex at the bottom, top-left, top-right vertex of `W`.
    pub outer_triangles: [Triangle; 3],
    /// ccw large triangle.
    pub large: Triangle,
    /// Angle label (0 = α, 1 = β, 2 = γ) of each vertex of `large`.
    pub large_labels: [usize; 3],
    pub fitted: Option<Similarity>,
    /// Fit details, present when `fitted` is.
    pub fit: Option<FitReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    /// Native vertex index matched to each vertex of `large`.
    pub native_index: [usize; 3],
    /// `max |S(large_i) − native_j|` over the matched vertices, in native diameters.
    pub vertex_residual: f64,
    /// `max |S(W_k) − T_k|` against the forward Morley points, in native diameters.
    pub morley_residual: f64,
    /// Images of the W vertices under the fit.
    pub fitted_w: [Point; 3],
}

/// Builds the full figure of three outer triangles around `W` (side `z`)
/// without fitting it to a native.
pub fn assemble(angles: AngleTriple, z: f64) -> Result<AssembledFigure, ReverseError> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(ReverseError::BadScale(z));
    }
    let AngleTriple { alpha, beta, gamma } = angles;
    let w = abstract_equilateral(z)?;
    let [left, bottom, right] = w.vertices();
    // cyclic substitution of the labels around W: (far_prev, far_next, apex)
    let at_bottom = erect(bottom, left, right, beta, alpha, gamma)?;
    let at_left = erect(left, right, bottom, gamma, beta, alpha)?;
    let at_right = erect(right, bottom, left, alpha, gamma, beta)?;

    // every far vertex is produced twice, once from each end of its side
    let far_left = agree(at_bottom.far_prev, at_left.far_next, z, "far vertex on the left side")?;
    let far_right = agree(at_bottom.far_next, at_right.far_prev, z, "far vertex on the right side")?;
    let far_top = agree(at_left.far_prev, at_right.far_next, z, "far vertex on the top side")?;

    let outer_triangles = [
        Triangle::new(far_left, far_right, bottom)?.to_ccw().0,
        Triangle::new(far_top, far_left, left)?.to_ccw().0,
        Triangle::new(far_right, far_top, right)?.to_ccw().0,
    ];
    for (t, apex, label, what) in [
        (outer_triangles[0], bottom, gamma, "outer triangle at bottom"),
        (outer_triangles[1], left, alpha, "outer triangle at top-left"),
        (outer_triangles[2], right, beta, "outer triangle at top-right"),
    ] {
        let i = t.vertices().iter().position(|p| *p == apex).expect("apex is a vertex");
        let residual = (t.interior_angles()[i] - (label + TWO_THIRDS_PI)).abs();
        if residual > IDENTITY_EPS {
            return Err(ReverseError::Inconsistent { what, residual });
        }
        // apex angle above 120° keeps the outer triangle off W's interior
        if w.barycentric(t.centroid()).iter().all(|&b| b > 0.0) {
            return Err(ReverseError::Inconsistent { what, residual: 0.0 });
        }
    }

    let (large, swapped) = Triangle::new(far_left, far_right, far_top)?.to_ccw();
    let mut large_labels = [1, 0, 2];
    if swapped {
        large_labels.swap(1, 2);
    }
    let labels = angles.as_array();
    for (measured, &label) in large.interior_angles().iter().zip(&large_labels) {
        let residual = (measured - 3.0 * labels[label]).abs();
        if residual > FIT_EPS {
            return Err(ReverseError::Inconsistent {
                what: "large triangle angle",
                residual,
            });
        }
    }

    Ok(AssembledFigure {
        angles,
        w,
        dashed: [at_bottom.dashed_prev, at_bottom.dashed_next, at_left.dashed_prev],
        outer_triangles,
        large,
        large_labels,
        fitted: None,
        fit: None,
    })
}

fn agree(p: Point, q: Point, z: f64, what: &'static str) -> Result<Point, ReverseError> {
    let scale = z.max(p.to_vec().length()).max(q.to_vec().length());
    let residual = p.distance(q) / scale;
    if residual > IDENTITY_EPS {
        return Err(ReverseError::Inconsistent { what, residual });
    }
    Ok(p.lerp(q, 0.5))
}

/// Vertex indices sorted by angle, ties kept in ccw order.
fn order_by_angle(angles: [f64; 3]) -> [usize; 3] {
    let mut idx = [0, 1, 2];
    idx.sort_by(|&i, &j| angles[i].total_cmp(&angles[j]));
    idx
}

/// Assembles the figure and fits the large triangle onto `native` (which
/// must have angles `(3α, 3β, 3γ)` at a, b, c), then checks that the fit
/// carries `W` onto the forward Morley triangle.
pub fn assemble_and_fit(angles: AngleTriple, native: &Triangle) -> Result<AssembledFigure, ReverseError> {
    let forward = MorleyConfig::construct(native)?;
    let native = forward.native;
    let native_angles = native.interior_angles();
    let gap = native_angles
        .iter()
        .zip(angles.as_array())
        .map(|(n, a)| (n / 3.0 - a).abs())
        .fold(0.0, f64::max);
    if gap > FIT_EPS {
        return Err(ReverseError::AngleMismatch { gap });
    }

    let mut fig = assemble(angles, 1.0)?;
    let large_v = fig.large.vertices();
    let native_v = native.vertices();
    let large_order = order_by_angle(fig.large.interior_angles());
    let native_order = order_by_angle(native_angles);
    let mut native_index = [0usize; 3];
    for k in 0..3 {
        native_index[large_order[k]] = native_order[k];
    }

    let diameter = native.diameter();
    let (p1, p2) = (large_v[0], large_v[1]);
    let (q1, q2) = (native_v[native_index[0]], native_v[native_index[1]]);
    let candidates = [
        similarity_from_correspondence(p1, p2, q1, q2)?,
        reflecting_similarity_from_correspondence(p1, p2, q1, q2)?,
    ];
    let residual_of = |s: &Similarity| {
        (0..3)
            .map(|i| s.apply(large_v[i]).distance(native_v[native_index[i]]))
            .fold(0.0, f64::max)
            / diameter
    };
    let (fitted, vertex_residual) = candidates
        .iter()
        .map(|s| (*s, residual_of(s)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("two candidates");
    if vertex_residual > FIT_EPS {
        return Err(ReverseError::FitFailure {
            what: "large-to-native vertex",
            residual: vertex_residual,
        });
    }

    // W's vertex k is the apex of the outer triangle whose longest side is
    // opposite large vertex `opposite[k]`; it lands on the Morley point
    // opposite the matched native vertex.
    let w_v = fig.w.vertices();
    let mut fitted_w = [Point::ORIGIN; 3];
    let mut morley_residual: f64 = 0.0;
    for (k, wk) in w_v.iter().enumerate() {
        let opposite = opposite_large_vertex(&fig, *wk);
        let target = forward.morley_points[native_index[opposite]];
        fitted_w[k] = fitted.apply(*wk);
        morley_residual = morley_residual.max(fitted_w[k].distance(target) / diameter);
    }
    if morley_residual > FIT_EPS {
        return Err(ReverseError::FitFailure {
            what: "W-to-Morley",
            residual: morley_residual,
        });
    }

    fig.fitted = Some(fitted);
    fig.fit = Some(FitReport {
        native_index,
        vertex_residual,
        morley_residual,
        fitted_w,
    });
    Ok(fig)
}

/// Index of the large-triangle vertex that is not a vertex of the outer
/// triangle with apex `apex`.
fn opposite_large_vertex(fig: &AssembledFigure, apex: Point) -> usize {
    let outer = fig
        .outer_triangles
        .iter()
        .find(|t| t.vertices().contains(&apex))
        .expect("every W vertex is an apex");
    let large_v = fig.large.vertices();
    (0..3)
        .find(|&i| !outer.vertices().contains(&large_v[i]))
        .expect("outer triangle spans one large side")
}
