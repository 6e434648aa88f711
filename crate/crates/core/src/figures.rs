//! The five standard figures: the Morley triangle, the abstract triangle,
//! equal angle sums, equal angle pairs, and the return of the native.

use thiserror::Error;

use crate::forward::{ForwardError, MorleyConfig};
use crate::geometry::{GeometryError, Point, Triangle};
use crate::render::{census, render_svg_with, Census, Layers, RenderStyle};
use crate::reverse::{assemble_and_fit, build_reverse_figure, AngleTriple, ReverseError};

#[derive(Debug, Error)]
pub enum FigureError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Forward(#[from] ForwardError),
    #[error(transparent)]
    Reverse(#[from] ReverseError),
}

/// Thirds of the native angles used for every figure, in degrees.
pub const FIGURE_ANGLES_DEG: [f64; 3] = [25.0, 20.0, 15.0];

/// Native triangle with angles 75°, 60°, 45° on a unit base.
pub fn figure_native() -> Result<Triangle, GeometryError> {
    let [a, b, _] = FIGURE_ANGLES_DEG.map(|t| (3.0 * t).to_radians());
    // apex from the two base angles
    let (ta, tb) = (a.tan(), b.tan());
    let x = tb / (ta + tb);
    Triangle::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(x, x * ta))
}

/// `(file name, svg)` for fig1 … fig5.
pub fn all_figures(style: &RenderStyle) -> Result<Vec<(String, String)>, FigureError> {
    let [a, b, g] = FIGURE_ANGLES_DEG;
    let angles = AngleTriple::from_degrees(a, b, g).map_err(ReverseError::from)?;
    let native = figure_native()?;
    let morley = MorleyConfig::construct(&native)?;
    let reverse = build_reverse_figure(angles, 1.0)?;
    let assembled = assemble_and_fit(angles, &native)?;

    let off = Layers {
        names: false,
        angles: false,
        derived_angles: false,
        sides: false,
        connector: false,
    };
    let svgs = [
        render_svg_with(&morley, style, Layers { names: true, ..off }),
        render_svg_with(
            &reverse,
            style,
            Layers {
                names: true,
                angles: true,
                ..off
            },
        ),
        render_svg_with(
            &reverse,
            style,
            Layers {
                angles: true,
                derived_angles: true,
                connector: true,
                ..off
            },
        ),
        render_svg_with(
            &reverse,
            style,
            Layers {
                angles: true,
                derived_angles: true,
                sides: true,
                connector: true,
                ..off
            },
        ),
        render_svg_with(&assembled, style, Layers { names: true, ..off }),
    ];
    Ok(svgs
        .into_iter()
        .enumerate()
        .map(|(i, svg)| (format!("fig{}.svg", i + 1), svg))
        .collect())
}

/// Expected element counts of fig1 … fig5.
pub const GOLDEN_CENSUS: [Census; 5] = [
    // native, shaded Morley triangle, six trisectors, A B C
    Census {
        polygons: 2,
        filled_polygons: 1,
        dashed_paths: 6,
        lines: 0,
        texts: 3,
    },
    // W with two dashed triangles; W plus six angle labels
    Census {
        polygons: 1,
        filled_polygons: 0,
        dashed_paths: 2,
        lines: 0,
        texts: 7,
    },
    // connector added, W label dropped, three derived angles
    Census {
        polygons: 1,
        filled_polygons: 0,
        dashed_paths: 2,
        lines: 1,
        texts: 9,
    },
    // three Z, one X, one Y on top of fig3
    Census {
        polygons: 1,
        filled_polygons: 0,
        dashed_paths: 2,
        lines: 1,
        texts: 14,
    },
    // large triangle, shaded W, three dashed triangles, 3α 3β 3γ and W
    Census {
        polygons: 2,
        filled_polygons: 1,
        dashed_paths: 3,
        lines: 0,
        texts: 4,
    },
];

/// Censuses of `figures` that differ from [`GOLDEN_CENSUS`], as
/// `(index, found)`.
pub fn census_mismatches(figures: &[(String, String)]) -> Vec<(usize, Census)> {
    let mut out: Vec<(usize, Census)> = figures
        .iter()
        .enumerate()
        .map(|(i, (_, svg))| (i, census(svg)))
        .filter(|(i, c)| GOLDEN_CENSUS.get(*i) != Some(c))
        .collect();
    if figures.len() != GOLDEN_CENSUS.len() {
        out.push((figures.len(), Census::default()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn native_angles() {
        let t = figure_native().unwrap();
        let got = t.interior_angles().map(f64::to_degrees);
        for (g, want) in got.iter().zip([75.0, 60.0, 45.0]) {
            assert!((g - want).abs() < 1e-12, "{got:?}");
        }
    }

    #[test]
    fn golden() {
        let figs = all_figures(&RenderStyle::default()).unwrap();
        assert_eq!(census_mismatches(&figs), vec![]);
        assert_eq!(figs, all_figures(&RenderStyle::default()).unwrap());
    }
}
