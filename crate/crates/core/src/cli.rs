//! Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
//! 2 bad usage or unreadable input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::figures::{all_figures, census_mismatches};
use crate::forward::{EquilateralReport, MorleyConfig};
use crate::geometry::{Point, Triangle};
use crate::numerics::Tolerance;
use crate::render::{render_svg, RenderStyle};
use crate::reverse::{build_reverse_figure, check_companion_equality, AngleTriple};
use crate::scene::{evaluate_scene, parse_scene};
use crate::sweep::{run_sweep, triangle_from_angles, SweepConfig, SCHEMA_VERSION};
use crate::tusi::{solve_tusi, TusiProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "morley",
    version,
    about = "Morley trisector constructions, checks and figures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Random sweep checking that every Morley triangle is equilateral.
    Verify {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Smallest native angle, degrees.
        #[arg(long = "min-angle", default_value_t = 1.0)]
        min_angle: f64,
        /// Write the full JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build the Morley triangle of one native triangle.
    Construct {
        #[command(flatten)]
        native: NativeArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build the abstract reverse figure from angle thirds (degrees, sum 60).
    Reverse {
        #[arg(long)]
        angles: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Recover two angles from their sum (degrees) and sine ratio.
    SolveTusi {
        #[arg(long)]
        sum: f64,
        #[arg(long, allow_negative_numbers = true)]
        ratio: f64,
    },
    /// Evaluate a .scene script.
    Run { file: PathBuf },
    /// Write fig1.svg ... fig5.svg.
    Figures {
        #[arg(long)]
        outdir: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct NativeArgs {
    /// Native angles in degrees, "A,B,C".
    #[arg(long)]
    angles: Option<String>,
    /// Vertex coordinates, "x1,y1,x2,y2,x3,y3".
    #[arg(long)]
    points: Option<String>,
}

/// Usage or input problem; maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn numbers<const N: usize>(text: &str, what: &str) -> Result<[f64; N], UsageError> {
    let parsed: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| UsageError(format!("{what}: {e}")))?;
    parsed
        .try_into()
        .map_err(|v: Vec<f64>| UsageError(format!("{what}: expected {N} numbers, got {}", v.len())))
}

fn write_output(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), UsageError> {
    if path == Path::new("-") {
        out.write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn pt(p: Point) -> String {
    format!("({:.12}, {:.12})", p.x, p.y)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command, out) {
        Ok(passed) => {
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<bool, UsageError> {
    match command {
        Command::Verify {
            count,
            seed,
            min_angle,
            json,
        } => {
            let doc = run_sweep(&SweepConfig::new(count, seed, min_angle))?;
            writeln!(out, "{}", doc.summary())?;
            writeln!(out, "aggregate {}", serde_json::to_string(&doc.aggregate)?)?;
            if let Some(path) = json {
                write_output(&path, &(doc.to_json() + "\n"), out)?;
            }
            Ok(doc.aggregate.failures == 0)
        }
        Command::Construct { native, svg, json } => construct(native, svg, json, out),
        Command::Reverse { angles, svg } => {
            let [a, b, g] = numbers::<3>(&angles, "--angles")?;
            let triple = AngleTriple::from_degrees(a, b, g)?;
            let fig = build_reverse_figure(triple, 1.0)?;
            let report = check_companion_equality(&fig, Tolerance::default())?;
            writeln!(
                out,
                "W: {} {} {}",
                pt(fig.top_left()),
                pt(fig.bottom()),
                pt(fig.top_right())
            )?;
            writeln!(out, "far vertices: {} {}", pt(fig.far_left), pt(fig.far_right))?;
            writeln!(out, "x = {:.12}, y = {:.12}", fig.x, fig.y)?;
            writeln!(
                out,
                "alpha' = {:.9} deg, beta' = {:.9} deg, top = {:.9} deg",
                fig.alpha_prime.to_degrees(),
                fig.beta_prime.to_degrees(),
                fig.top_angle.to_degrees()
            )?;
            writeln!(
                out,
                "sin a / sin b = {:.15}, x / y = {:.15}, sin a' / sin b' = {:.15}",
                report.sine_ratio, report.side_ratio, report.companion_ratio
            )?;
            writeln!(out, "verdict: {}", report.verdict)?;
            if let Some(path) = svg {
                write_output(&path, &render_svg(&fig, &RenderStyle::default()), out)?;
            }
            Ok(report.verdict.is_equal())
        }
        Command::SolveTusi { sum, ratio } => {
            let p = TusiProblem::from_degrees(sum, ratio)?;
            let (a, b) = solve_tusi(&p, Tolerance::absolute(1e-13)?)?;
            let round = |x: f64| (x.to_degrees() * 1e9).round() / 1e9;
            writeln!(out, "alpha={:?} beta={:?}", round(a), round(b))?;
            Ok(true)
        }
        Command::Run { file } => run_scene(&file, out),
        Command::Figures { outdir } => {
            fs::create_dir_all(&outdir).map_err(|e| UsageError(format!("{}: {e}", outdir.display())))?;
            let figs = all_figures(&RenderStyle::default()).map_err(|e| UsageError(e.to_string()))?;
            for (name, svg) in &figs {
                let path = outdir.join(name);
                fs::write(&path, svg).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
                writeln!(out, "wrote {}", path.display())?;
            }
            Ok(census_mismatches(&figs).is_empty())
        }
    }
}

#[derive(Serialize)]
struct ConstructDocument<'a> {
    schema_version: u32,
    mode: &'static str,
    native: [Point; 3],
    morley_points: [Point; 3],
    report: &'a EquilateralReport,
}

fn construct(
    native: NativeArgs,
    svg: Option<PathBuf>,
    json: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<bool, UsageError> {
    let triangle = match (native.angles, native.points) {
        (Some(a), _) => {
            let angles = numbers::<3>(&a, "--angles")?;
            if angles.iter().any(|&x| !(x > 0.0)) || (angles.iter().sum::<f64>() - 180.0).abs() > 1e-9 {
                return Err(UsageError(
                    "--angles: expected three positive angles summing to 180".into(),
                ));
            }
            triangle_from_angles(angles).ok_or_else(|| UsageError("--angles: degenerate triangle".into()))?
        }
        (None, Some(p)) => Triangle::from_coords(pairs(numbers::<6>(&p, "--points")?))?,
        (None, None) => unreachable!("clap requires one of --angles, --points"),
    };
    let config = MorleyConfig::construct(&triangle)?;
    let report = config.report(Tolerance::default().scaled(config.native.diameter()));
    for (name, p) in ["P", "Q", "R"].iter().zip(config.morley_points) {
        writeln!(out, "{name} = {}", pt(p))?;
    }
    let [a, b, c] = report.side_lengths;
    writeln!(out, "sides: {a:.15} {b:.15} {c:.15}")?;
    writeln!(
        out,
        "max relative side deviation {:e}, max angle deviation {:e} rad",
        report.max_relative_side_deviation, report.max_angle_deviation
    )?;
    writeln!(out, "verdict: {}", report.verdict)?;
    if let Some(path) = svg {
        write_output(&path, &render_svg(&config, &RenderStyle::default()), out)?;
    }
    if let Some(path) = json {
        let doc = ConstructDocument {
            schema_version: SCHEMA_VERSION,
            mode: "construct",
            native: config.native.vertices(),
            morley_points: config.morley_points,
            report: &report,
        };
        write_output(&path, &(serde_json::to_string_pretty(&doc)? + "\n"), out)?;
    }
    Ok(report.verdict.is_equal())
}

fn pairs(v: [f64; 6]) -> [(f64, f64); 3] {
    [(v[0], v[1]), (v[2], v[3]), (v[4], v[5])]
}

fn run_scene(file: &Path, out: &mut dyn Write) -> Result<bool, UsageError> {
    let source = fs::read_to_string(file).map_err(|e| UsageError(format!("{}: {e}", file.display())))?;
    let ast = parse_scene(&source).map_err(|e| UsageError(format!("{}:{e}", file.display())))?;
    let outcome = match evaluate_scene(&ast, Tolerance::default()) {
        Ok(o) => o,
        Err(e) if e.kind.is_geometric() => {
            writeln!(out, "FAIL {}:{e}", file.display())?;
            return Ok(false);
        }
        Err(e) => return Err(UsageError(format!("{}:{e}", file.display()))),
    };
    for r in &outcome.assertion_results {
        let status = if r.verdict.is_equal() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{status} {}:{} {} residual={:e} ({})",
            file.display(),
            r.span,
            r.kind,
            r.residual,
            r.verdict
        )?;
    }
    Ok(outcome.all_passed())
}
