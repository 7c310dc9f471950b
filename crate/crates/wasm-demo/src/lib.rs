//! WebAssembly bindings behind `www/index.html`. Every export returns a JSON
//! string so the page needs no glue beyond `JSON.parse`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;

use crgeom::flow::{self, init_state, Preset, Scheme};
use crgeom::heisenberg::make_grid;
use crgeom::pointwise::{
    admissible_mu_interval, extremal_parameters, margin_verdict, pinching_margin, quadratic_form, webster_scalar,
    MuInterval, Verdict,
};
use crgeom::report::to_json;
use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Samples of the quadratic form on the unit circle, for the polar plot.
pub const DIRECTION_SAMPLES: usize = 180;
/// The explorer refuses grids above this size to keep the page responsive.
pub const MAX_DEMO_N: usize = 24;
pub const MAX_DEMO_STEPS: usize = 200_000;

#[derive(Serialize)]
struct PositivityView {
    margin: f64,
    verdict: Verdict,
    s0: Option<f64>,
    s1: Option<f64>,
    directions: Vec<f64>,
}

fn encode<T: Serialize>(value: &T) -> Result<String, String> {
    to_json(value, None).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn positivity(w: f64, a_re: f64, a_im: f64, c0: f64) -> Result<String, String> {
    if !(c0 >= 0.0) || !w.is_finite() || !a_re.is_finite() || !a_im.is_finite() {
        return Err("W, A11 must be finite and C0 non-negative".into());
    }
    let a11 = Complex64::new(a_re, a_im);
    let margin = pinching_margin(w, a11, c0);
    let e = extremal_parameters(a11);
    let directions = (0..DIRECTION_SAMPLES)
        .map(|k| {
            let x = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / DIRECTION_SAMPLES as f64);
            quadratic_form(w, a11, c0, x).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    encode(&PositivityView { margin, verdict: margin_verdict(margin), s0: e.s0, s1: e.s1, directions })
}

#[derive(Serialize)]
struct WebsterView {
    mu_interval: Option<MuInterval>,
    lambda: Option<f64>,
    /// `(λ, scalar curvature)` along a log-spaced sweep.
    curve: Vec<(f64, f64)>,
}

#[wasm_bindgen]
pub fn webster_search(w: f64, abs_a: f64) -> Result<String, String> {
    if !(abs_a >= 0.0) || !w.is_finite() {
        return Err("W must be finite and |A| non-negative".into());
    }
    let interval = admissible_mu_interval(w, abs_a);
    let curve = (0..=120)
        .map(|k| {
            let lambda = 10f64.powf(-2.0 + 4.0 * k as f64 / 120.0);
            webster_scalar(lambda, w, abs_a).map(|s| (lambda, s)).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    encode(&WebsterView { mu_interval: interval, lambda: interval.map(|i| i.representative_lambda()), curve })
}

#[derive(Serialize)]
struct FlowView {
    rows: Vec<flow::FlowRow>,
    steps: usize,
    blowup: bool,
    dt: f64,
}

/// Runs the pseudo-Einstein flow from a preset (`pinched-demo` or
/// `homogeneous:W0,a0`) and returns the recorded rows.
#[wasm_bindgen]
pub fn flow_explorer(preset: &str, n: usize, c0: f64, t_end: f64) -> Result<String, String> {
    if n > MAX_DEMO_N {
        return Err(format!("N is capped at {MAX_DEMO_N} in the browser"));
    }
    let preset: Preset = preset.parse().map_err(|e: flow::FlowError| e.to_string())?;
    let grid = make_grid(n).map_err(|e| e.to_string())?;
    let state = init_state(preset.w(&grid), preset.a(&grid), c0, None).map_err(|e| e.to_string())?;
    let dt = state.dt;
    if !(t_end > 0.0) || t_end / dt > MAX_DEMO_STEPS as f64 {
        return Err(format!("t_end must be positive and need at most {MAX_DEMO_STEPS} steps of dt = {dt:.3e}"));
    }
    let every = ((t_end / dt) / 200.0).ceil().max(1.0) as usize;
    let out = flow::run(state, t_end, every, Scheme::Heun).map_err(|e| e.to_string())?;
    encode(&FlowView { rows: out.rows, steps: out.steps, blowup: out.blowup, dt })
}
