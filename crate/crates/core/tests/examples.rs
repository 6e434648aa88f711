macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(construct_morley, "construct_morley.rs");
example!(reverse_figure, "reverse_figure.rs");
example!(solve_tusi, "solve_tusi.rs");
example!(run_scene, "run_scene.rs");
example!(sweep, "sweep.rs");
example!(render_figures, "render_figures.rs");
example!(interval_certify, "interval_certify.rs");

#[test]
fn construct_morley_runs() {
    construct_morley::run_example().expect("construct_morley example should run");
}

#[test]
fn reverse_figure_runs() {
    reverse_figure::run_example().expect("reverse_figure example should run");
}

#[test]
fn solve_tusi_runs() {
    solve_tusi::run_example().expect("solve_tusi example should run");
}

#[test]
fn run_scene_runs() {
    run_scene::run_example().expect("run_scene example should run");
}

#[test]
fn sweep_runs() {
    sweep::run_example().expect("sweep example should run");
}

#[test]
fn render_figures_runs() {
    render_figures::run_example().expect("render_figures example should run");
}

#[test]
fn interval_certify_runs() {
    interval_certify::run_example().expect("interval_certify example should run");
}
