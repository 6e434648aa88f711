use std::fmt;

use serde::Serialize;

/// Source location of a statement or token. `line` and `column` are 1-based
/// and count characters; `start..end` is the byte range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssertKind {
    Equilateral,
    AngleEq,
    LengthRatio,
    Similar,
    PointNear,
}

/// What an assertion argument must name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgSlot {
    Point,
    Segment,
    Triangle,
    Number,
}

impl AssertKind {
    pub const ALL: [AssertKind; 5] = [
        AssertKind::Equilateral,
        AssertKind::AngleEq,
        AssertKind::LengthRatio,
        AssertKind::Similar,
        AssertKind::PointNear,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            AssertKind::Equilateral => "equilateral",
            AssertKind::AngleEq => "angle_eq",
            AssertKind::LengthRatio => "length_ratio",
            AssertKind::Similar => "similar",
            AssertKind::PointNear => "point_near",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == word)
    }

    /// Argument signature.
    ///
    /// - `equilateral(P, Q, R)`
    /// - `angle_eq(A, V, B, angle)`: angle at `V` between `VA` and `VB`
    /// - `length_ratio(s, t, r)`: `|s| / |t| = r`
    /// - `similar(T, U)`
    /// - `point_near(P, Q)`
    pub fn signature(self) -> &'static [ArgSlot] {
        use ArgSlot::*;
        match self {
            AssertKind::Equilateral => &[Point, Point, Point],
            AssertKind::AngleEq => &[Point, Point, Point, Number],
            AssertKind::LengthRatio => &[Segment, Segment, Number],
            AssertKind::Similar => &[Triangle, Triangle],
            AssertKind::PointNear => &[Point, Point],
        }
    }
}

impl fmt::Display for AssertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Arg {
    Name {
        name: String,
    },
    /// `deg` marks a degree literal; the value is stored as written.
    Number {
        value: f64,
        deg: bool,
    },
}

impl Arg {
    pub fn name(&self) -> Option<&str> {
        match self {
            Arg::Name { name } => Some(name),
            Arg::Number { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Statement {
    Point {
        name: String,
        x: f64,
        y: f64,
    },
    Triangle {
        name: String,
        vertices: [String; 3],
    },
    /// `index` 1 picks the trisector nearer the side toward the next vertex
    /// (ccw), 2 the one nearer the side toward the previous vertex.
    Trisector {
        name: String,
        triangle: String,
        vertex: String,
        index: u8,
    },
    Intersect {
        name: String,
        rays: [String; 2],
    },
    Segment {
        name: String,
        ends: [String; 2],
    },
    Assert {
        kind: AssertKind,
        args: Vec<Arg>,
        tolerance: Option<f64>,
    },
}

impl Statement {
    /// Name bound by this statement, if any.
    pub fn defines(&self) -> Option<&str> {
        match self {
            Statement::Point { name, .. }
            | Statement::Triangle { name, .. }
            | Statement::Trisector { name, .. }
            | Statement::Intersect { name, .. }
            | Statement::Segment { name, .. } => Some(name),
            Statement::Assert { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpannedStatement {
    pub statement: Statement,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SceneAst {
    pub statements: Vec<SpannedStatement>,
}

impl SceneAst {
    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    /// Statements without their spans.
    pub fn structure(&self) -> Vec<&Statement> {
        self.statements.iter().map(|s| &s.statement).collect()
    }
}

fn number(v: f64) -> String {
    // `{:?}` is the shortest repr that parses back to the same f64
    format!("{v:?}")
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name { name } => f.write_str(name),
            Arg::Number { value, deg } => {
                write!(f, "{}{}", number(*value), if *deg { "deg" } else { "" })
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Point { name, x, y } => write!(f, "point {name} = ({}, {});", number(*x), number(*y)),
            Statement::Triangle {
                name,
                vertices: [a, b, c],
            } => write!(f, "triangle {name} = ({a}, {b}, {c});"),
            Statement::Trisector {
                name,
                triangle,
                vertex,
                index,
            } => write!(f, "trisector {name} = ({triangle}, {vertex}, {index});"),
            Statement::Intersect { name, rays: [r, s] } => write!(f, "intersect {name} = ({r}, {s});"),
            Statement::Segment { name, ends: [p, q] } => write!(f, "segment {name} = ({p}, {q});"),
            Statement::Assert { kind, args, tolerance } => {
                write!(f, "assert {kind}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")?;
                if let Some(t) = tolerance {
                    write!(f, " within {}", number(*t))?;
                }
                f.write_str(";")
            }
        }
    }
}

/// Canonical source text, one statement per line.
impl fmt::Display for SceneAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.statement)?;
        }
        Ok(())
    }
}
