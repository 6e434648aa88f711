use std::fs;
use std::path::{Path, PathBuf};

use morley::scene::{evaluate_scene, morley_scene_source, parse_scene, Arg, AssertKind, SceneAst, Statement};
use morley::{MorleyConfig, Tolerance, Triangle};
use proptest::prelude::*;

mod common;

fn dir(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

pub fn corpus() -> Vec<PathBuf> {
    let mut files = vec![dir("examples/morley.scene")];
    let mut variants: Vec<PathBuf> = fs::read_dir(dir("examples/scenes"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "scene"))
        .collect();
    variants.sort();
    files.extend(variants);
    files
}

/// `(path, line, column)` from each fixture's `# expect-error: L:C` header.
pub fn fixtures() -> Vec<(PathBuf, usize, usize)> {
    let mut out: Vec<_> = fs::read_dir(dir("tests/fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let src = fs::read_to_string(&p).unwrap();
            let header = src
                .lines()
                .next()
                .unwrap()
                .strip_prefix("# expect-error: ")
                .unwrap()
                .to_string();
            let (l, c) = header.split_once(':').unwrap();
            (p, l.parse().unwrap(), c.parse().unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_scripts_pass() {
    let files = corpus();
    assert!(files.len() >= 5);
    for path in files {
        let ast = parse_scene(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(ast.len(), 14, "{}", path.display());
        let out = evaluate_scene(&ast, Tolerance::default()).unwrap();
        assert_eq!(out.assertion_results.len(), 1);
        assert!(out.all_passed(), "{}: {:?}", path.display(), out.assertion_results);
    }
}

#[test]
fn equilateral_script_is_exact() {
    let ast = parse_scene(&fs::read_to_string(dir("examples/morley.scene")).unwrap()).unwrap();
    let out = evaluate_scene(&ast, Tolerance::default()).unwrap();
    assert!(out.assertion_results[0].residual <= 1e-12);
}

#[test]
fn fixtures_report_positions() {
    let fixtures = fixtures();
    assert!(fixtures.len() >= 5);
    for (path, line, column) in fixtures {
        let err = parse_scene(&fs::read_to_string(&path).unwrap()).unwrap_err();
        assert_eq!((err.line, err.column), (line, column), "{}: {err}", path.display());
    }
}

#[test]
fn dsl_matches_forward_construction() {
    let mut rng = common::rng(51);
    for _ in 0..1_000 {
        let native = common::random_native(&mut rng, 1.0);
        let out = evaluate_scene(
            &parse_scene(&morley_scene_source(&native)).unwrap(),
            Tolerance::default(),
        )
        .unwrap();
        let direct = MorleyConfig::construct(&native).unwrap();
        let d = native.diameter();
        for (name, p) in ["P", "Q", "R"].iter().zip(direct.morley_points) {
            let q = out.point(name).unwrap();
            assert!(q.distance(p) <= 1e-12 * d, "{name}: {} vs {}", q.distance(p), 1e-12 * d);
        }
        assert!(out.all_passed());
    }
}

#[test]
fn printed_corpus_reparses() {
    for path in corpus() {
        let ast = parse_scene(&fs::read_to_string(&path).unwrap()).unwrap();
        let again = parse_scene(&ast.to_string()).unwrap();
        assert_eq!(ast.structure(), again.structure());
    }
}

fn number() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6..1e6f64,
        (-300i32..300).prop_map(|e| 1.234 * 10f64.powi(e)),
        Just(0.0),
        Just(-0.5)
    ]
}

/// Random well-formed statement lists: points first, then things built from them.
fn statements() -> impl Strategy<Value = Vec<Statement>> {
    (
        3usize..6,
        prop::collection::vec((number(), number()), 6),
        prop::collection::vec(0u8..6, 1..8),
        prop::collection::vec(number(), 8),
        any::<bool>(),
    )
        .prop_map(|(n, coords, kinds, nums, within)| {
            let pts: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let mut out: Vec<Statement> = pts
                .iter()
                .zip(coords)
                .map(|(name, (x, y))| Statement::Point {
                    name: name.clone(),
                    x,
                    y,
                })
                .collect();
            out.push(Statement::Triangle {
                name: "T".into(),
                vertices: [pts[0].clone(), pts[1].clone(), pts[2].clone()],
            });
            out.push(Statement::Triangle {
                name: "U".into(),
                vertices: [pts[2].clone(), pts[1].clone(), pts[0].clone()],
            });
            out.push(Statement::Segment {
                name: "s".into(),
                ends: [pts[0].clone(), pts[1].clone()],
            });
            out.push(Statement::Trisector {
                name: "r1".into(),
                triangle: "T".into(),
                vertex: pts[0].clone(),
                index: 1,
            });
            out.push(Statement::Trisector {
                name: "r2".into(),
                triangle: "T".into(),
                vertex: pts[1].clone(),
                index: 2,
            });
            out.push(Statement::Intersect {
                name: "X".into(),
                rays: ["r1".into(), "r2".into()],
            });
            let name = |s: &str| Arg::Name { name: s.to_string() };
            for (i, k) in kinds.into_iter().enumerate() {
                let tolerance = within.then(|| nums[i].abs().max(1e-300));
                let (kind, args) = match k {
                    0 => (AssertKind::Equilateral, vec![name("p0"), name("p1"), name("X")]),
                    1 => (
                        AssertKind::AngleEq,
                        vec![
                            name("p0"),
                            name("p1"),
                            name("p2"),
                            Arg::Number {
                                value: nums[i],
                                deg: true,
                            },
                        ],
                    ),
                    2 => (
                        AssertKind::AngleEq,
                        vec![
                            name("p0"),
                            name("X"),
                            name("p2"),
                            Arg::Number {
                                value: nums[i],
                                deg: false,
                            },
                        ],
                    ),
                    3 => (
                        AssertKind::LengthRatio,
                        vec![
                            name("s"),
                            name("s"),
                            Arg::Number {
                                value: nums[i],
                                deg: false,
                            },
                        ],
                    ),
                    4 => (AssertKind::Similar, vec![name("T"), name("U")]),
                    _ => (AssertKind::PointNear, vec![name("X"), name("p2")]),
                };
                out.push(Statement::Assert { kind, args, tolerance });
            }
            out
        })
}

fn render(stmts: &[Statement]) -> String {
    stmts.iter().map(|s| format!("{s}\n")).collect()
}

proptest! {
    #[test]
    fn print_parse_round_trip(stmts in statements()) {
        let src = render(&stmts);
        let ast: SceneAst = parse_scene(&src).unwrap();
        let owned: Vec<Statement> = ast.structure().into_iter().cloned().collect();
        prop_assert_eq!(&owned, &stmts);
        let again = parse_scene(&ast.to_string()).unwrap();
        prop_assert_eq!(ast.structure(), again.structure());
    }

    #[test]
    fn error_positions_exist(stmts in statements(), cut in any::<prop::sample::Index>(), junk in "[a-z0-9(),;=#. \n]{0,3}") {
        let src = render(&stmts);
        let at = cut.index(src.len() + 1);
        let at = (0..=at).rev().find(|&i| src.is_char_boundary(i)).unwrap();
        let mangled = format!("{}{}{}", &src[..at], junk, &src[(at + 1).min(src.len())..]);
        if let Err(e) = parse_scene(&mangled) {
            let lines: Vec<&str> = mangled.split('\n').collect();
            prop_assert!(e.line >= 1 && e.line <= lines.len(), "{e} in {mangled:?}");
            let len = lines[e.line - 1].chars().count();
            prop_assert!(e.column >= 1 && e.column <= len.max(1), "{e}: line has {len} chars");
        }
    }

    #[test]
    fn generated_scripts_agree_with_forward(x in -5.0..5.0f64, y in 0.2..5.0f64) {
        let native = Triangle::from_coords([(0.0, 0.0), (1.0, 0.0), (x, y)]).unwrap();
        prop_assume!(native.interior_angles().iter().all(|a| a.to_degrees() > 1.0));
        let out = evaluate_scene(&parse_scene(&morley_scene_source(&native)).unwrap(), Tolerance::default()).unwrap();
        prop_assert!(out.all_passed());
    }
}
