use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use super::ast::{Arg, AssertKind, SceneAst, Span, Statement};
use crate::forward::{equilateral_report, trisector_fans, ForwardError};
use crate::geometry::{distance_enclosure, ray_intersect, GeometryError, Point, Ray, Triangle};
use crate::numerics::{certify_within, CertResult, Interval, Tolerance};

/// Ulps of slack put around angles measured with `atan2`.
const ANGLE_ULPS: u32 = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Value {
    Point { point: Point },
    Triangle { triangle: Triangle },
    Ray { ray: Ray },
    Segment { from: Point, to: Point },
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Point { .. } => "point",
            Value::Triangle { .. } => "triangle",
            Value::Ray { .. } => "trisector",
            Value::Segment { .. } => "segment",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalErrorKind {
    #[error("`{0}` is not defined")]
    Undefined(String),
    #[error("`{0}` is already defined")]
    Redefined(String),
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongType {
        name: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("`{vertex}` is not a vertex of triangle `{triangle}`")]
    NotAVertex { vertex: String, triangle: String },
    #[error("malformed assertion: {0}")]
    BadAssertion(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Forward(#[from] ForwardError),
}

impl EvalErrorKind {
    /// Errors a well-formed script can still hit because of its geometry, as
    /// opposed to naming or typing mistakes.
    pub fn is_geometric(&self) -> bool {
        matches!(self, EvalErrorKind::Geometry(_) | EvalErrorKind::Forward(_))
    }
}

/// Evaluation failure carrying the span of the offending statement.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{span}: {kind}")]
pub struct EvalError {
    pub span: Span,
    pub kind: EvalErrorKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssertionResult {
    pub span: Span,
    pub kind: AssertKind,
    pub verdict: CertResult,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SceneOutcome {
    /// Bindings in definition order.
    pub bindings: Vec<(String, Value)>,
    pub assertion_results: Vec<AssertionResult>,
}

impl SceneOutcome {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn point(&self, name: &str) -> Option<Point> {
        match self.get(name)? {
            Value::Point { point } => Some(*point),
            _ => None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.assertion_results.iter().all(|r| r.verdict.is_equal())
    }
}

struct Env {
    values: Vec<(String, Value)>,
    index: HashMap<String, usize>,
}

impl Env {
    fn get(&self, name: &str) -> Result<&Value, EvalErrorKind> {
        self.index
            .get(name)
            .map(|&i| &self.values[i].1)
            .ok_or_else(|| EvalErrorKind::Undefined(name.to_string()))
    }

    fn point(&self, name: &str) -> Result<Point, EvalErrorKind> {
        match self.get(name)? {
            Value::Point { point } => Ok(*point),
            v => Err(wrong(name, "point", v)),
        }
    }

    fn triangle(&self, name: &str) -> Result<Triangle, EvalErrorKind> {
        match self.get(name)? {
            Value::Triangle { triangle } => Ok(*triangle),
            v => Err(wrong(name, "triangle", v)),
        }
    }

    fn ray(&self, name: &str) -> Result<Ray, EvalErrorKind> {
        match self.get(name)? {
            Value::Ray { ray } => Ok(*ray),
            v => Err(wrong(name, "trisector", v)),
        }
    }

    fn segment(&self, name: &str) -> Result<(Point, Point), EvalErrorKind> {
        match self.get(name)? {
            Value::Segment { from, to } => Ok((*from, *to)),
            v => Err(wrong(name, "segment", v)),
        }
    }

    fn bind(&mut self, name: &str, value: Value) -> Result<(), EvalErrorKind> {
        if self.index.contains_key(name) {
            return Err(EvalErrorKind::Redefined(name.to_string()));
        }
        self.index.insert(name.to_string(), self.values.len());
        self.values.push((name.to_string(), value));
        Ok(())
    }
}

fn wrong(name: &str, expected: &'static str, found: &Value) -> EvalErrorKind {
    EvalErrorKind::WrongType {
        name: name.to_string(),
        expected,
        found: found.kind(),
    }
}

/// Runs every statement in order. Assertions record a verdict and never stop
/// evaluation; construction failures do.
pub fn evaluate_scene(ast: &SceneAst, tol: Tolerance) -> Result<SceneOutcome, EvalError> {
    let mut env = Env {
        values: Vec::new(),
        index: HashMap::new(),
    };
    let mut results = Vec::new();
    for stmt in &ast.statements {
        let at = |kind: EvalErrorKind| EvalError { span: stmt.span, kind };
        match &stmt.statement {
            Statement::Assert { kind, args, tolerance } => {
                let tol = match tolerance {
                    Some(t) => Tolerance::absolute(*t).map_err(|e| at(EvalErrorKind::BadAssertion(e.to_string())))?,
                    None => tol,
                };
                let (verdict, residual) = check(&env, *kind, args, tol).map_err(at)?;
                results.push(AssertionResult {
                    span: stmt.span,
                    kind: *kind,
                    verdict,
                    residual,
                });
            }
            s => {
                let name = s.defines().expect("non-assert statements bind a name");
                let value = construct(&env, s).map_err(at)?;
                env.bind(name, value).map_err(at)?;
            }
        }
    }
    Ok(SceneOutcome {
        bindings: env.values,
        assertion_results: results,
    })
}

fn construct(env: &Env, s: &Statement) -> Result<Value, EvalErrorKind> {
    Ok(match s {
        Statement::Point { x, y, .. } => Value::Point {
            point: Point::new(*x, *y),
        },
        Statement::Triangle { vertices, .. } => {
            let [a, b, c] = [
                env.point(&vertices[0])?,
                env.point(&vertices[1])?,
                env.point(&vertices[2])?,
            ];
            Value::Triangle {
                triangle: Triangle::new(a, b, c)?,
            }
        }
        Statement::Trisector {
            triangle,
            vertex,
            index,
            ..
        } => {
            let t = env.triangle(triangle)?;
            let v = env.point(vertex)?;
            let fans = trisector_fans(&t)?;
            let fan = fans
                .iter()
                .find(|f| f.vertex == v)
                .ok_or_else(|| EvalErrorKind::NotAVertex {
                    vertex: vertex.clone(),
                    triangle: triangle.clone(),
                })?;
            let ray = match index {
                1 => *fan.toward_next(),
                2 => *fan.toward_previous(),
                other => return Err(EvalErrorKind::BadAssertion(format!("trisector index {other}"))),
            };
            Value::Ray { ray }
        }
        Statement::Intersect { rays, .. } => {
            let (r, s) = (env.ray(&rays[0])?, env.ray(&rays[1])?);
            Value::Point {
                point: ray_intersect(&r, &s)?,
            }
        }
        Statement::Segment { ends, .. } => Value::Segment {
            from: env.point(&ends[0])?,
            to: env.point(&ends[1])?,
        },
        Statement::Assert { .. } => unreachable!("assertions handled by the caller"),
    })
}

fn names(args: &[Arg], n: usize) -> Result<Vec<&str>, EvalErrorKind> {
    let out: Vec<&str> = args.iter().filter_map(Arg::name).collect();
    if out.len() != n {
        return Err(EvalErrorKind::BadAssertion(format!(
            "expected {n} names, got {}",
            out.len()
        )));
    }
    Ok(out)
}

fn number(arg: Option<&Arg>) -> Result<(f64, bool), EvalErrorKind> {
    match arg {
        Some(Arg::Number { value, deg }) => Ok((*value, *deg)),
        _ => Err(EvalErrorKind::BadAssertion("expected a number".into())),
    }
}

fn check(env: &Env, kind: AssertKind, args: &[Arg], tol: Tolerance) -> Result<(CertResult, f64), EvalErrorKind> {
    if args.len() != kind.signature().len() {
        return Err(EvalErrorKind::BadAssertion(format!(
            "`{kind}` takes {} arguments",
            kind.signature().len()
        )));
    }
    match kind {
        AssertKind::Equilateral => {
            let n = names(args, 3)?;
            let t = Triangle::new(env.point(n[0])?, env.point(n[1])?, env.point(n[2])?)?;
            let r = equilateral_report(&t, tol);
            Ok((r.verdict, r.max_relative_side_deviation))
        }
        AssertKind::AngleEq => {
            let n = names(args, 3)?;
            let (value, deg) = number(args.get(3))?;
            let target = if deg { value.to_radians() } else { value };
            let (a, v, b) = (env.point(n[0])?, env.point(n[1])?, env.point(n[2])?);
            let measured = crate::geometry::angle_between(a - v, b - v);
            let verdict = certify_within(Interval::around(measured, ANGLE_ULPS), Interval::around(target, 1), tol);
            Ok((verdict, (measured - target).abs()))
        }
        AssertKind::LengthRatio => {
            let n = names(args, 2)?;
            let (target, _) = number(args.get(2))?;
            let (s0, s1) = env.segment(n[0])?;
            let (t0, t1) = env.segment(n[1])?;
            let num = distance_enclosure(s0, s1);
            let den = distance_enclosure(t0, t1);
            let ratio = num
                .checked_div(den)
                .map_err(|_| GeometryError::Degenerate { what: "segment" })?;
            let verdict = certify_within(ratio, Interval::point(target), tol);
            Ok((verdict, (ratio.mid() - target).abs()))
        }
        AssertKind::Similar => {
            let n = names(args, 2)?;
            let mut a = env.triangle(n[0])?.interior_angles();
            let mut b = env.triangle(n[1])?.interior_angles();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            let verdict =
                CertResult::all(a.iter().zip(&b).map(|(x, y)| {
                    certify_within(Interval::around(*x, ANGLE_ULPS), Interval::around(*y, ANGLE_ULPS), tol)
                }));
            let residual = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            Ok((verdict, residual))
        }
        AssertKind::PointNear => {
            let n = names(args, 2)?;
            let d = distance_enclosure(env.point(n[0])?, env.point(n[1])?);
            let verdict = certify_within(d, Interval::point(0.0), tol);
            Ok((verdict, d.mid()))
        }
    }
}
