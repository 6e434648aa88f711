//! Seeded random verification of the Morley theorem.
//!
//! Angle thirds are drawn uniformly from the simplex `α + β + γ = 60°` by
//! normalizing three exponentials, rejected until every native angle clears
//! the floor, then placed with random scale, rotation and translation.
//! Instance `i` uses ChaCha8 seeded with `seed` on stream `i`, so results do
//! not depend on scheduling.

use std::f64::consts::{PI, TAU};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::forward::MorleyConfig;
use crate::geometry::{Point, Similarity, Triangle, Vec2};
use crate::numerics::{certify_within, CertResult, Interval, Tolerance};
use crate::reverse::assemble_and_fit;

pub const SCHEMA_VERSION: u32 = 1;

/// Smallest accepted angle floor, degrees.
pub const MIN_ANGLE_FLOOR_DEG: f64 = 1e-3;

const MAX_REJECTIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("count must be at least 1")]
    EmptySweep,
    #[error("min angle must lie in [{MIN_ANGLE_FLOOR_DEG}, 60) degrees, got {0}")]
    MinAngle(f64),
    #[error("forced angles must be positive and sum to 180 degrees, got {0:?}")]
    ForcedAngles([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepConfig {
    pub count: usize,
    pub seed: u64,
    pub min_angle_deg: f64,
    /// Relative tolerance; scaled by each native's diameter.
    pub tol: Tolerance,
    /// Native angles in degrees used for every instance instead of sampling.
    pub forced_angles_deg: Option<[f64; 3]>,
}

impl SweepConfig {
    pub fn new(count: usize, seed: u64, min_angle_deg: f64) -> Self {
        SweepConfig {
            count,
            seed,
            min_angle_deg,
            tol: Tolerance::default(),
            forced_angles_deg: None,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.count == 0 {
            return Err(SweepError::EmptySweep);
        }
        if !(self.min_angle_deg >= MIN_ANGLE_FLOOR_DEG && self.min_angle_deg < 60.0) {
            return Err(SweepError::MinAngle(self.min_angle_deg));
        }
        if let Some(a) = self.forced_angles_deg {
            if a.iter().any(|&x| !(x > 0.0)) || (a.iter().sum::<f64>() - 180.0).abs() > 1e-9 {
                return Err(SweepError::ForcedAngles(a));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceResult {
    pub index: usize,
    /// Sampled native angles, degrees.
    pub angles_deg: [f64; 3],
    pub native: [Point; 3],
    pub max_relative_side_deviation: f64,
    /// Radians from 60°.
    pub max_angle_deviation: f64,
    /// Fit residuals in native diameters.
    pub vertex_residual: Option<f64>,
    pub morley_residual: Option<f64>,
    pub verdict: CertResult,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub max_side_deviation: f64,
    pub mean_side_deviation: f64,
    pub max_angle_deviation: f64,
    pub mean_angle_deviation: f64,
    pub max_vertex_residual: f64,
    pub max_morley_residual: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepInputs {
    pub count: usize,
    pub min_angle_deg: f64,
    pub abs_eps: f64,
    pub rel_eps: f64,
    pub forced_angles_deg: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub mode: String,
    pub inputs: SweepInputs,
    pub instances: Vec<InstanceResult>,
    pub aggregate: Aggregate,
    pub seed: u64,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Two-line human summary.
    pub fn summary(&self) -> String {
        let a = &self.aggregate;
        format!(
            "{} instances, seed {}, {} failures\nmax side deviation {:e}, max angle deviation {:e} rad, max fit residual {:e}",
            self.instances.len(),
            self.seed,
            a.failures,
            a.max_side_deviation,
            a.max_angle_deviation,
            a.max_morley_residual.max(a.max_vertex_residual)
        )
    }
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Native angles in degrees, each at least `min_angle_deg`.
pub fn sample_native_angles(rng: &mut impl RngExt, min_angle_deg: f64) -> [f64; 3] {
    for _ in 0..MAX_REJECTIONS {
        // 1 - u lies in (0, 1], so the log is finite
        let e: [f64; 3] = std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
        let s: f64 = e.iter().sum();
        let angles = e.map(|x| 180.0 * x / s);
        if angles.iter().all(|&a| a >= min_angle_deg) {
            return angles;
        }
    }
    // floors close to 60° make rejection hopeless; fall back to the center
    [60.0; 3]
}

/// Triangle with the given angles (degrees) on a unit base at the origin.
pub fn triangle_from_angles(angles_deg: [f64; 3]) -> Option<Triangle> {
    let [a, b, c] = angles_deg.map(f64::to_radians);
    let ac = b.sin() / c.sin();
    Triangle::new(
        Point::ORIGIN,
        Point::new(1.0, 0.0),
        Point::new(ac * a.cos(), ac * a.sin()),
    )
    .ok()
}

fn random_placement(rng: &mut impl RngExt) -> Similarity {
    let scale = 10f64.powf(rng.random_range(-2.0..2.0));
    let rotation = rng.random_range(-PI..PI);
    let translation = Vec2::new(rng.random_range(-100.0..100.0), rng.random_range(-100.0..100.0));
    Similarity::new(scale, rotation, translation, false).expect("positive finite scale")
}

fn run_instance(cfg: &SweepConfig, index: usize) -> InstanceResult {
    let mut rng = instance_rng(cfg.seed, index);
    let angles_deg = cfg
        .forced_angles_deg
        .unwrap_or_else(|| sample_native_angles(&mut rng, cfg.min_angle_deg));
    let placement = random_placement(&mut rng);
    let mut result = InstanceResult {
        index,
        angles_deg,
        native: [Point::ORIGIN; 3],
        max_relative_side_deviation: f64::INFINITY,
        max_angle_deviation: TAU,
        vertex_residual: None,
        morley_residual: None,
        verdict: CertResult::Undecided,
        error: None,
    };
    let native = match triangle_from_angles(angles_deg).map(|t| t.map(&placement)) {
        Some(Ok(t)) => t,
        _ => {
            result.error = Some("degenerate native".into());
            return result;
        }
    };
    result.native = native.vertices();
    let config = match MorleyConfig::construct(&native) {
        Ok(c) => c,
        Err(e) => {
            result.error = Some(e.to_string());
            return result;
        }
    };
    let report = config.report(cfg.tol.scaled(native.diameter()));
    result.max_relative_side_deviation = report.max_relative_side_deviation;
    result.max_angle_deviation = report.max_angle_deviation;
    let fit = assemble_and_fit(config.angle_triple, &native).map(|a| a.fit);
    let fit_verdict = match fit {
        Ok(Some(f)) => {
            result.vertex_residual = Some(f.vertex_residual);
            result.morley_residual = Some(f.morley_residual);
            let worst = f.vertex_residual.max(f.morley_residual);
            certify_within(
                Interval::point(worst),
                Interval::point(0.0),
                Tolerance::absolute(cfg.tol.abs_eps()).unwrap(),
            )
        }
        Ok(None) => CertResult::Undecided,
        Err(e) => {
            result.error = Some(e.to_string());
            CertResult::Undecided
        }
    };
    result.verdict = CertResult::all([report.verdict, fit_verdict]);
    result
}

fn aggregate(instances: &[InstanceResult]) -> Aggregate {
    let n = instances.len().max(1) as f64;
    let max = |f: fn(&InstanceResult) -> f64| instances.iter().map(f).fold(0.0, f64::max);
    let mean = |f: fn(&InstanceResult) -> f64| instances.iter().map(f).sum::<f64>() / n;
    Aggregate {
        max_side_deviation: max(|r| r.max_relative_side_deviation),
        mean_side_deviation: mean(|r| r.max_relative_side_deviation),
        max_angle_deviation: max(|r| r.max_angle_deviation),
        mean_angle_deviation: mean(|r| r.max_angle_deviation),
        max_vertex_residual: max(|r| r.vertex_residual.unwrap_or(f64::INFINITY)),
        max_morley_residual: max(|r| r.morley_residual.unwrap_or(f64::INFINITY)),
        failures: instances.iter().filter(|r| !r.verdict.is_equal()).count(),
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<ReportDocument, SweepError> {
    cfg.validate()?;
    let instances: Vec<InstanceResult> = (0..cfg.count).into_par_iter().map(|i| run_instance(cfg, i)).collect();
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        mode: "verify".to_string(),
        inputs: SweepInputs {
            count: cfg.count,
            min_angle_deg: cfg.min_angle_deg,
            abs_eps: cfg.tol.abs_eps(),
            rel_eps: cfg.tol.rel_eps(),
            forced_angles_deg: cfg.forced_angles_deg,
        },
        aggregate: aggregate(&instances),
        instances,
        seed: cfg.seed,
    })
}
