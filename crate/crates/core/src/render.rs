//! SVG output for the forward, reverse and assembled figures.
//!
//! Geometry is drawn in math-up coordinates and flipped at render time.
//! Trisectors and the dashed triangles are `<path>` elements with a dash
//! pattern, solid triangles are `<polygon>`s and the connecting segment of
//! the reverse figure is a `<line>`.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::forward::MorleyConfig;
use crate::geometry::{Point, Triangle};
use crate::reverse::{AssembledFigure, ReverseFigure};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("{what} must be positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("margin fraction must lie in [0, 0.4], got {0}")]
    Margin(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    stroke_width: f64,
    dashed_stroke_width: f64,
    dash: [f64; 2],
    morley_fill: String,
    width: f64,
    height: f64,
    margin: f64,
    font_size: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            stroke_width: 1.5,
            dashed_stroke_width: 1.0,
            dash: [6.0, 4.0],
            morley_fill: "#c8c8c8".to_string(),
            width: 640.0,
            height: 480.0,
            margin: 0.08,
            font_size: 14.0,
        }
    }
}

impl RenderStyle {
    pub fn new(
        stroke_width: f64,
        dashed_stroke_width: f64,
        dash: [f64; 2],
        morley_fill: impl Into<String>,
        (width, height): (f64, f64),
        margin: f64,
    ) -> Result<Self, RenderError> {
        for (what, value) in [
            ("stroke width", stroke_width),
            ("dashed stroke width", dashed_stroke_width),
            ("dash length", dash[0]),
            ("dash gap", dash[1]),
            ("canvas width", width),
            ("canvas height", height),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(RenderError::NonPositive { what, value });
            }
        }
        if !(0.0..=0.4).contains(&margin) {
            return Err(RenderError::Margin(margin));
        }
        Ok(RenderStyle {
            stroke_width,
            dashed_stroke_width,
            dash,
            morley_fill: morley_fill.into(),
            width,
            height,
            margin,
            font_size: 14.0,
        })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }
}

/// Anything [`render_svg`] can draw.
#[derive(Debug, Clone, Copy)]
pub enum Figure<'a> {
    Morley(&'a MorleyConfig),
    Reverse(&'a ReverseFigure),
    Assembled(&'a AssembledFigure),
}

impl<'a> From<&'a MorleyConfig> for Figure<'a> {
    fn from(f: &'a MorleyConfig) -> Self {
        Figure::Morley(f)
    }
}

impl<'a> From<&'a ReverseFigure> for Figure<'a> {
    fn from(f: &'a ReverseFigure) -> Self {
        Figure::Reverse(f)
    }
}

impl<'a> From<&'a AssembledFigure> for Figure<'a> {
    fn from(f: &'a AssembledFigure) -> Self {
        Figure::Assembled(f)
    }
}

/// Optional parts of a drawing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layers {
    /// Vertex names, or the `W` label on the reverse figures.
    pub names: bool,
    /// Given angles of the reverse figure.
    pub angles: bool,
    /// `α′`, `β′` and the top angle.
    pub derived_angles: bool,
    /// `Z`, `X`, `Y` side labels.
    pub sides: bool,
    /// Segment joining the two far vertices.
    pub connector: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Layers {
            names: true,
            angles: false,
            derived_angles: false,
            sides: false,
            connector: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Element {
    Polygon { points: Vec<Point>, filled: bool },
    Dashed { points: Vec<Point>, closed: bool },
    Line { from: Point, to: Point },
    Text { at: Point, text: String },
}

impl Element {
    fn points(&self) -> Vec<Point> {
        match self {
            Element::Polygon { points, .. } | Element::Dashed { points, .. } => points.clone(),
            Element::Line { from, to } => vec![*from, *to],
            Element::Text { at, .. } => vec![*at],
        }
    }
}

pub fn render_svg<'a>(figure: impl Into<Figure<'a>>, style: &RenderStyle) -> String {
    render_svg_with(figure, style, Layers::default())
}

pub fn render_svg_with<'a>(figure: impl Into<Figure<'a>>, style: &RenderStyle, layers: Layers) -> String {
    let elements = match figure.into() {
        Figure::Morley(m) => morley_elements(m, layers),
        Figure::Reverse(r) => reverse_elements(r, layers),
        Figure::Assembled(a) => assembled_elements(a, layers),
    };
    write_svg(&elements, style)
}

fn tri(t: &Triangle) -> Vec<Point> {
    t.vertices().to_vec()
}

/// Label position pulled from `p` toward `toward`.
fn inset(p: Point, toward: Point, f: f64) -> Point {
    p.lerp(toward, f)
}

fn text(at: Point, s: impl Into<String>) -> Element {
    Element::Text { at, text: s.into() }
}

fn morley_elements(m: &MorleyConfig, layers: Layers) -> Vec<Element> {
    let mut out = vec![
        Element::Polygon {
            points: tri(&m.native),
            filled: false,
        },
        Element::Polygon {
            points: m.morley_points.to_vec(),
            filled: true,
        },
    ];
    // toward_next of vertex i ends at the point opposite i-1, toward_previous
    // at the point opposite i+1
    for (i, fan) in m.fans.iter().enumerate() {
        for (ray, j) in [(fan.toward_next(), (i + 2) % 3), (fan.toward_previous(), (i + 1) % 3)] {
            out.push(Element::Dashed {
                points: vec![ray.origin(), m.morley_points[j]],
                closed: false,
            });
        }
    }
    if layers.names {
        let c = m.native.centroid();
        for (p, name) in m.native.vertices().into_iter().zip(["A", "B", "C"]) {
            out.push(text(inset(p, c, -0.08), name));
        }
    }
    out
}

fn reverse_elements(r: &ReverseFigure, layers: Layers) -> Vec<Element> {
    let (tl, bottom, tr) = (r.top_left(), r.bottom(), r.top_right());
    let (fl, fr) = (r.far_left, r.far_right);
    let mut out = vec![
        Element::Polygon {
            points: tri(&r.w),
            filled: false,
        },
        Element::Dashed {
            points: tri(&r.dashed_left),
            closed: true,
        },
        Element::Dashed {
            points: tri(&r.dashed_right),
            closed: true,
        },
    ];
    if layers.connector {
        out.push(Element::Line { from: fl, to: fr });
    }
    if layers.names {
        out.push(text(r.w.centroid(), "W"));
    }
    if layers.angles {
        let (cl, cr) = (r.dashed_left.centroid(), r.dashed_right.centroid());
        out.extend([
            text(inset(tl, cl, 0.45), "γ+60°"),
            text(inset(tr, cr, 0.45), "γ+60°"),
            text(inset(fl, cl, 0.45), "β"),
            text(inset(fr, cr, 0.45), "α"),
            text(inset(bottom, cl, 0.45), "α+60°"),
            text(inset(bottom, cr, 0.45), "β+60°"),
        ]);
    }
    if layers.derived_angles {
        let c = r.outer.centroid();
        out.extend([
            text(inset(fl, c, 0.3), "β′"),
            text(inset(fr, c, 0.3), "α′"),
            text(inset(bottom, c, 0.45), "γ+120°"),
        ]);
    }
    if layers.sides {
        let mid = |p: Point, q: Point| p.lerp(q, 0.5);
        out.extend([
            text(mid(tl, bottom), "Z"),
            text(mid(bottom, tr), "Z"),
            text(mid(tr, tl), "Z"),
            text(mid(bottom, fl), "X"),
            text(mid(bottom, fr), "Y"),
        ]);
    }
    out
}

fn assembled_elements(a: &AssembledFigure, layers: Layers) -> Vec<Element> {
    let map = |p: Point| a.fitted.as_ref().map_or(p, |s| s.apply(p));
    let mapped = |t: &Triangle| t.vertices().map(map).to_vec();
    let mut out = vec![
        Element::Polygon {
            points: mapped(&a.large),
            filled: false,
        },
        Element::Polygon {
            points: mapped(&a.w),
            filled: true,
        },
    ];
    for d in &a.dashed {
        out.push(Element::Dashed {
            points: mapped(d),
            closed: true,
        });
    }
    if layers.names {
        let large = a.large.vertices().map(map);
        let c = large[0].lerp(large[1], 0.5).lerp(large[2], 1.0 / 3.0);
        for (p, label) in large.into_iter().zip(a.large_labels) {
            out.push(text(inset(p, c, -0.08), ["3α", "3β", "3γ"][label]));
        }
        let w = a.w.vertices().map(map);
        out.push(text(w[0].lerp(w[1], 0.5).lerp(w[2], 1.0 / 3.0), "W"));
    }
    out
}

/// Nine significant digits, trailing zeros dropped, no negative zero.
fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).clamp(0, 17) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn write_svg(elements: &[Element], style: &RenderStyle) -> String {
    let pts: Vec<Point> = elements.iter().flat_map(Element::points).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let (w, h) = (style.width, style.height);
    let inner_w = w * (1.0 - 2.0 * style.margin);
    let inner_h = h * (1.0 - 2.0 * style.margin);
    let span_x = (x1 - x0).max(f64::MIN_POSITIVE);
    let span_y = (y1 - y0).max(f64::MIN_POSITIVE);
    let scale = (inner_w / span_x).min(inner_h / span_y);
    let ox = (w - scale * span_x) / 2.0;
    let oy = (h - scale * span_y) / 2.0;
    let px = |p: Point| (ox + (p.x - x0) * scale, h - oy - (p.y - y0) * scale);
    let coords = |points: &[Point]| {
        points
            .iter()
            .map(|&p| {
                let (x, y) = px(p);
                format!("{},{}", num(x), num(y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(w),
        num(h),
        num(w),
        num(h)
    );
    let dash = format!("{},{}", num(style.dash[0]), num(style.dash[1]));
    for e in elements {
        let _ = match e {
            Element::Polygon { points, filled } => writeln!(
                s,
                "  <polygon points=\"{}\" fill=\"{}\" stroke=\"black\" stroke-width=\"{}\"/>",
                coords(points),
                if *filled {
                    escape(&style.morley_fill)
                } else {
                    "none".into()
                },
                num(style.stroke_width)
            ),
            Element::Dashed { points, closed } => {
                let mut d = String::new();
                for (i, &p) in points.iter().enumerate() {
                    let (x, y) = px(p);
                    let _ = write!(d, "{}{},{} ", if i == 0 { "M" } else { "L" }, num(x), num(y));
                }
                d.push_str(if *closed { "Z" } else { "" });
                writeln!(
                    s,
                    "  <path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-dasharray=\"{dash}\"/>",
                    d.trim_end(),
                    num(style.dashed_stroke_width)
                )
            }
            Element::Line { from, to } => {
                let ((xa, ya), (xb, yb)) = (px(*from), px(*to));
                writeln!(
                    s,
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"{}\"/>",
                    num(xa),
                    num(ya),
                    num(xb),
                    num(yb),
                    num(style.stroke_width)
                )
            }
            Element::Text { at, text } => {
                let (x, y) = px(*at);
                writeln!(
                    s,
                    "  <text x=\"{}\" y=\"{}\" font-family=\"serif\" font-size=\"{}\" text-anchor=\"middle\">{}</text>",
                    num(x),
                    num(y),
                    num(style.font_size),
                    escape(text)
                )
            }
        };
    }
    s.push_str("</svg>\n");
    s
}

/// Element counts of an SVG produced by this module.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub polygons: usize,
    pub filled_polygons: usize,
    pub dashed_paths: usize,
    pub lines: usize,
    pub texts: usize,
}

pub fn census(svg: &str) -> Census {
    let mut c = Census::default();
    for line in svg.lines().map(str::trim) {
        if line.starts_with("<polygon") {
            c.polygons += 1;
            if !line.contains("fill=\"none\"") {
                c.filled_polygons += 1;
            }
        } else if line.starts_with("<path") && line.contains("stroke-dasharray") {
            c.dashed_paths += 1;
        } else if line.starts_with("<line") {
            c.lines += 1;
        } else if line.starts_with("<text") {
            c.texts += 1;
        }
    }
    c
}
