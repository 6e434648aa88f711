//! Morley trisector constructions with certified checks.
//!
//! The crate builds the interior Morley triangle of any triangle
//! ([`forward`]), replays the law-of-sines argument that it is equilateral
//! ([`reverse`], [`tusi`]), and certifies the numeric claims with interval
//! enclosures ([`numerics`]). Construction scripts in the `.scene` language
//! ([`scene`]), SVG figures ([`render`]), and seeded random sweeps
//! ([`sweep`]) sit on top.
//!
//! ```
//! use morley::{MorleyConfig, Tolerance, Triangle};
//!
//! let native = Triangle::from_coords([(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]).unwrap();
//! let config = MorleyConfig::construct(&native).unwrap();
//! let report = config.report(Tolerance::default().scaled(native.diameter()));
//! assert!(report.verdict.is_equal());
//! assert!(report.max_relative_side_deviation < 1e-12);
//! ```

// `!(x > 0.0)` style guards are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod figures;
pub mod forward;
pub mod geometry;
pub mod numerics;
pub mod render;
pub mod reverse;
pub mod scene;
pub mod sweep;
pub mod tusi;

pub use forward::{equilateral_report, morley_points, trisector_fans, EquilateralReport, MorleyConfig, TrisectorFan};
pub use geometry::{
    interior_angles, law_of_sines_residual, ray_intersect, similarity_from_correspondence, Point, Ray, Similarity,
    Triangle, Vec2,
};
pub use numerics::{certify_within, enclose_sin, CertResult, Interval, Tolerance};
pub use reverse::{
    assemble, assemble_and_fit, build_reverse_figure, check_companion_equality, AngleTriple, AssembledFigure,
    ReverseFigure,
};
pub use tusi::{sine_ratio, solve_tusi, uniqueness_check, TusiProblem};
