//! The `.scene` construction language: parse, evaluate, print.

mod ast;
mod eval;
mod parser;

pub use ast::{Arg, ArgSlot, AssertKind, SceneAst, Span, SpannedStatement, Statement};
pub use eval::{evaluate_scene, AssertionResult, EvalError, EvalErrorKind, SceneOutcome, Value};
pub use parser::{parse_scene, ParseError, KEYWORDS};

use crate::geometry::Triangle;

/// Standard Morley script for `native`: three points, the triangle, six
/// trisectors, three intersections and an equilateral assertion.
///
/// Points are written in counter-clockwise order so `P`, `Q`, `R` land
/// opposite `A`, `B`, `C`.
pub fn morley_scene_source(native: &Triangle) -> String {
    let (t, _) = native.to_ccw();
    let [a, b, c] = t.vertices();
    let mut s = String::new();
    for (name, p) in [("A", a), ("B", b), ("C", c)] {
        s.push_str(&format!("point {name} = ({:?}, {:?});\n", p.x, p.y));
    }
    s.push_str(
        "triangle ABC = (A, B, C);\n\
         trisector a1 = (ABC, A, 1);\n\
         trisector a2 = (ABC, A, 2);\n\
         trisector b1 = (ABC, B, 1);\n\
         trisector b2 = (ABC, B, 2);\n\
         trisector c1 = (ABC, C, 1);\n\
         trisector c2 = (ABC, C, 2);\n\
         intersect P = (b1, c2);\n\
         intersect Q = (c1, a2);\n\
         intersect R = (a1, b2);\n\
         assert equilateral(P, Q, R);\n",
    );
    s
}
