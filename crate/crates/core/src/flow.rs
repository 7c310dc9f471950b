//! Curvature-torsion reaction-diffusion system on the flat Heisenberg
//! nilmanifold:
//!
//! ```text
//! ∂W/∂t = 5Δ_b W + 2(W² − a²) [+ 2Q]
//! ∂a/∂t = Δ_b a               [+ H/(2a)]
//! ```
//!
//! with `a = |A₁₁|`. The bracketed sources are present in generic mode only.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::heisenberg::{horizontal_gradient_sq, sublaplacian, FieldError, HeisenbergGrid, RealField};

/// Halting threshold for `max|W|`.
pub const BLOWUP_THRESHOLD: f64 = 1e8;
/// Largest diffusion coefficient in the system.
pub const MAX_DIFFUSION: f64 = 5.0;
pub const DEFAULT_SAFETY: f64 = 0.9;
/// Floor for `a` in the `H/(2a)` source.
pub const TORSION_FLOOR: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("torsion modulus has a negative entry ({value} at index {index})")]
    NegativeTorsionNorm { index: usize, value: f64 },
    #[error("dt = {dt:e} exceeds the stability bound {bound:e}")]
    CflViolation { dt: f64, bound: f64 },
    #[error("max|W| = {max_w:e} exceeded the blow-up threshold at t = {t}")]
    BlowUp { t: f64, max_w: f64 },
    #[error("t = {t} is at or past the blow-up time {blowup_time}")]
    PastBlowup { t: f64, blowup_time: f64 },
    #[error("step requires {expected} mode")]
    ModeMismatch { expected: &'static str },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug)]
pub enum FlowMode {
    PseudoEinstein,
    Generic { q: RealField, h_source: RealField },
}

/// Which quantity carries the torsion. `Squared` evolves `S = a²` with its
/// gradient sink, regularised at `S = 0`; it exists for cross-checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TorsionVariable {
    #[default]
    Modulus,
    Squared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Euler,
    /// `u ↦ ½(u + E(E(u)))`, a convex combination of Euler steps.
    #[default]
    Heun,
}

/// Stability bound `h²/(4·c_max)`.
pub fn cfl_bound(grid: &HeisenbergGrid) -> f64 {
    grid.h() * grid.h() / (4.0 * MAX_DIFFUSION)
}

#[derive(Clone, Debug)]
pub struct FlowState {
    pub w: RealField,
    pub a: RealField,
    pub t: f64,
    pub dt: f64,
    pub c0: f64,
    pub mode: FlowMode,
    pub variable: TorsionVariable,
    pub initial_margin: f64,
}

/// `dt = None` selects `0.9·h²/20`.
pub fn init_state(w: RealField, a: RealField, c0: f64, dt: Option<f64>) -> Result<FlowState, FlowError> {
    w.check_grid(&a)?;
    if let Some((index, &value)) = a.values().iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
        return Err(FlowError::NegativeTorsionNorm { index, value });
    }
    if !(c0 >= 0.0) {
        return Err(FlowError::InvalidInput(format!("C0 must be non-negative, got {c0}")));
    }
    let bound = cfl_bound(w.grid());
    let dt = match dt {
        Some(dt) if !(dt > 0.0 && dt <= bound) => return Err(FlowError::CflViolation { dt, bound }),
        Some(dt) => dt,
        None => DEFAULT_SAFETY * bound,
    };
    let mut state = FlowState {
        w,
        a,
        t: 0.0,
        dt,
        c0,
        mode: FlowMode::PseudoEinstein,
        variable: TorsionVariable::Modulus,
        initial_margin: 0.0,
    };
    state.initial_margin = pinch_margin(&state);
    Ok(state)
}

impl FlowState {
    pub fn grid(&self) -> &Arc<HeisenbergGrid> {
        self.w.grid()
    }

    pub fn with_sources(mut self, q: RealField, h_source: RealField) -> Result<Self, FlowError> {
        self.w.check_grid(&q)?;
        self.w.check_grid(&h_source)?;
        self.mode = FlowMode::Generic { q, h_source };
        Ok(self)
    }

    pub fn with_variable(mut self, variable: TorsionVariable) -> Self {
        self.variable = variable;
        self
    }

    fn with_fields(&self, w: RealField, a: RealField, t: f64) -> FlowState {
        FlowState { w, a, t, ..self.clone() }
    }
}

/// `min W − 2C₀·max a`.
pub fn pinch_margin(state: &FlowState) -> f64 {
    state.w.min() - 2.0 * state.c0 * state.a.max()
}

fn euler_fields(
    w: &RealField,
    a: &RealField,
    dt: f64,
    mode: &FlowMode,
    variable: TorsionVariable,
) -> (RealField, RealField) {
    let lw = sublaplacian(w);
    let (wv, av, lwv) = (w.values(), a.values(), lw.values());
    let grid = w.grid().clone();

    let w_new: Vec<f64> = match mode {
        FlowMode::PseudoEinstein => {
            (0..wv.len()).map(|i| wv[i] + dt * (5.0 * lwv[i] + 2.0 * (wv[i] * wv[i] - av[i] * av[i]))).collect()
        }
        FlowMode::Generic { q, .. } => {
            let qv = q.values();
            (0..wv.len())
                .map(|i| wv[i] + dt * (5.0 * lwv[i] + 2.0 * (wv[i] * wv[i] - av[i] * av[i]) + 2.0 * qv[i]))
                .collect()
        }
    };

    let a_new: Vec<f64> = match variable {
        TorsionVariable::Modulus => {
            let la = sublaplacian(a);
            let lav = la.values();
            match mode {
                FlowMode::PseudoEinstein => (0..av.len()).map(|i| av[i] + dt * lav[i]).collect(),
                FlowMode::Generic { h_source, .. } => {
                    let hv = h_source.values();
                    (0..av.len())
                        .map(|i| (av[i] + dt * (lav[i] + hv[i] / (2.0 * av[i].max(TORSION_FLOOR)))).max(0.0))
                        .collect()
                }
            }
        }
        TorsionVariable::Squared => {
            let s = a.mul(a);
            let ls = sublaplacian(&s);
            let grad = horizontal_gradient_sq(a);
            let (sv, lsv, gv) = (s.values(), ls.values(), grad.values());
            (0..av.len())
                .map(|i| {
                    let source = match mode {
                        FlowMode::PseudoEinstein => 0.0,
                        FlowMode::Generic { h_source, .. } => h_source.values()[i],
                    };
                    let s_new = sv[i] + dt * (lsv[i] - 2.0 * gv[i] + source);
                    s_new.max(0.0).sqrt()
                })
                .collect()
        }
    };

    (RealField::new(grid.clone(), w_new).expect("same length"), RealField::new(grid, a_new).expect("same length"))
}

fn check_blowup(state: FlowState) -> Result<FlowState, FlowError> {
    let max_w = state.w.sup_norm();
    if !(max_w <= BLOWUP_THRESHOLD) {
        return Err(FlowError::BlowUp { t: state.t, max_w });
    }
    Ok(state)
}

fn advance_unchecked(state: &FlowState, dt: f64, scheme: Scheme) -> FlowState {
    let (w1, a1) = euler_fields(&state.w, &state.a, dt, &state.mode, state.variable);
    match scheme {
        Scheme::Euler => state.with_fields(w1, a1, state.t + dt),
        Scheme::Heun => {
            let (w2, a2) = euler_fields(&w1, &a1, dt, &state.mode, state.variable);
            let w = state.w.zip_map(&w2, |u, v| 0.5 * (u + v));
            let a = state.a.zip_map(&a2, |u, v| 0.5 * (u + v));
            state.with_fields(w, a, state.t + dt)
        }
    }
}

fn advance(state: &FlowState, dt: f64, scheme: Scheme) -> Result<FlowState, FlowError> {
    check_blowup(advance_unchecked(state, dt, scheme))
}

/// One explicit Euler step of the pseudo-Einstein system.
pub fn step_pe(state: &FlowState) -> Result<FlowState, FlowError> {
    if !matches!(state.mode, FlowMode::PseudoEinstein) {
        return Err(FlowError::ModeMismatch { expected: "pseudo_einstein" });
    }
    advance(state, state.dt, Scheme::Euler)
}

/// One explicit Euler step of the system with `Q` and torsion sources.
pub fn step_generic(state: &FlowState) -> Result<FlowState, FlowError> {
    if !matches!(state.mode, FlowMode::Generic { .. }) {
        return Err(FlowError::ModeMismatch { expected: "generic" });
    }
    advance(state, state.dt, Scheme::Euler)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowRow {
    pub t: f64,
    #[serde(rename = "minW")]
    pub min_w: f64,
    #[serde(rename = "maxW")]
    pub max_w: f64,
    #[serde(rename = "maxA")]
    pub max_a: f64,
    pub margin: f64,
    #[serde(rename = "meanW")]
    pub mean_w: f64,
    pub blowup_flag: u8,
}

impl FlowRow {
    pub fn of(state: &FlowState, blowup: bool) -> Self {
        FlowRow {
            t: state.t,
            min_w: state.w.min(),
            max_w: state.w.max(),
            max_a: state.a.max(),
            margin: pinch_margin(state),
            mean_w: state.w.mean(),
            blowup_flag: blowup as u8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FlowRun {
    pub rows: Vec<FlowRow>,
    pub final_state: FlowState,
    pub steps: usize,
    pub blowup: bool,
}

/// Steps to `t_end`, shortening the last step to land on it exactly. Records
/// the initial state, every `record_every`-th step and the final state.
/// `observe(prev, next)` is called after every step.
pub fn run_observed(
    state: FlowState,
    t_end: f64,
    record_every: usize,
    scheme: Scheme,
    mut observe: impl FnMut(&FlowState, &FlowState),
) -> Result<FlowRun, FlowError> {
    if !(t_end > state.t) {
        return Err(FlowError::InvalidInput(format!("t_end = {t_end} must exceed t = {}", state.t)));
    }
    let every = record_every.max(1);
    let mut rows = vec![FlowRow::of(&state, false)];
    let mut current = state;
    let mut steps = 0;
    loop {
        let remaining = t_end - current.t;
        if remaining <= 1e-12 * t_end.abs().max(1.0) {
            break;
        }
        let dt = current.dt.min(remaining);
        let mut next = advance_unchecked(&current, dt, scheme);
        if dt == remaining {
            next.t = t_end;
        }
        if !(next.w.sup_norm() <= BLOWUP_THRESHOLD) {
            rows.push(FlowRow::of(&next, true));
            return Ok(FlowRun { rows, final_state: current, steps, blowup: true });
        }
        steps += 1;
        observe(&current, &next);
        current = next;
        if steps % every == 0 {
            rows.push(FlowRow::of(&current, false));
        }
    }
    if rows.last().map(|r| r.t) != Some(current.t) {
        rows.push(FlowRow::of(&current, false));
    }
    Ok(FlowRun { rows, final_state: current, steps, blowup: false })
}

pub fn run(state: FlowState, t_end: f64, record_every: usize, scheme: Scheme) -> Result<FlowRun, FlowError> {
    run_observed(state, t_end, record_every, scheme, |_, _| {})
}

/// Closed-form solution of `W' = 2(W² − s)`, `W(0) = W0`.
pub fn homogeneous_exact(w0: f64, s: f64, t: f64) -> Result<f64, FlowError> {
    if !(s >= 0.0) || !(t >= 0.0) {
        return Err(FlowError::InvalidInput(format!("need s ≥ 0 and t ≥ 0, got s = {s}, t = {t}")));
    }
    if let Some(t_star) = homogeneous_blowup_time(w0, s) {
        if t >= t_star {
            return Err(FlowError::PastBlowup { t, blowup_time: t_star });
        }
    }
    if s == 0.0 {
        return Ok(w0 / (1.0 - 2.0 * w0 * t));
    }
    let r = s.sqrt();
    if w0 == r || w0 == -r {
        Ok(w0)
    } else if w0.abs() > r {
        // r·coth(v₀ − 2rt), v₀ = arccoth(W0/r)
        let v0 = (r / w0).atanh();
        Ok(r / (v0 - 2.0 * r * t).tanh())
    } else {
        let v0 = (w0 / r).atanh();
        Ok(r * (v0 - 2.0 * r * t).tanh())
    }
}

/// Blow-up time of `W' = 2(W² − s)`, if finite.
pub fn homogeneous_blowup_time(w0: f64, s: f64) -> Option<f64> {
    if s == 0.0 {
        (w0 > 0.0).then(|| 1.0 / (2.0 * w0))
    } else {
        let r = s.sqrt();
        (w0 > r).then(|| (r / w0).atanh() / (2.0 * r))
    }
}

/// One step of the scalar reduction `w' = 2(w² − A²) + 2q` with the same
/// time-stepping as the field solver.
pub fn scalar_step(w: f64, a_max: f64, q: f64, dt: f64, scheme: Scheme) -> f64 {
    let euler = |v: f64| v + dt * (2.0 * (v * v - a_max * a_max) + 2.0 * q);
    match scheme {
        Scheme::Euler => euler(w),
        Scheme::Heun => 0.5 * (w + euler(euler(w))),
    }
}

/// Classical RK4 for a scalar autonomous ODE.
pub fn scalar_rk4(f: impl Fn(f64) -> f64, y0: f64, t: f64, steps: usize) -> f64 {
    let h = t / steps as f64;
    let mut y = y0;
    for _ in 0..steps {
        let k1 = f(y);
        let k2 = f(y + 0.5 * h * k1);
        let k3 = f(y + 0.5 * h * k2);
        let k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

/// Tracks the discrete comparison solution alongside a run and counts steps
/// where `min W` falls below it by more than a relative `1e-12`.
#[derive(Clone, Debug)]
pub struct ComparisonCheck {
    pub w: f64,
    pub a_max: f64,
    pub scheme: Scheme,
    pub violations: usize,
    pub worst_gap: f64,
}

impl ComparisonCheck {
    pub fn new(state: &FlowState, scheme: Scheme) -> Self {
        ComparisonCheck { w: state.w.min(), a_max: state.a.max(), scheme, violations: 0, worst_gap: f64::INFINITY }
    }

    pub fn observe(&mut self, prev: &FlowState, next: &FlowState) {
        self.w = scalar_step(self.w, self.a_max, 0.0, next.t - prev.t, self.scheme);
        let gap = next.w.min() - self.w;
        self.worst_gap = self.worst_gap.min(gap);
        if gap < -1e-12 * self.w.abs().max(1.0) {
            self.violations += 1;
        }
    }
}

/// Named initial data.
#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    Homogeneous {
        w0: f64,
        a0: f64,
    },
    /// `W = 1.5 + 0.3 sin(2πx)cos(2πy)`, `a = 0.25 + 0.2 sin(2πy)`.
    PinchedDemo,
}

impl std::str::FromStr for Preset {
    type Err = FlowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "pinched-demo" {
            return Ok(Preset::PinchedDemo);
        }
        let bad = || FlowError::InvalidInput(format!("unknown preset '{s}'"));
        let rest = s.strip_prefix("homogeneous:").ok_or_else(bad)?;
        let (w0, a0) = rest.split_once(',').ok_or_else(bad)?;
        let w0 = w0.trim().parse().map_err(|_| bad())?;
        let a0 = a0.trim().parse().map_err(|_| bad())?;
        Ok(Preset::Homogeneous { w0, a0 })
    }
}

impl Preset {
    pub fn w(&self, grid: &Arc<HeisenbergGrid>) -> RealField {
        match *self {
            Preset::Homogeneous { w0, .. } => RealField::constant(grid, w0),
            Preset::PinchedDemo => {
                RealField::from_fn(grid, |x, y, _| 1.5 + 0.3 * (2.0 * PI * x).sin() * (2.0 * PI * y).cos())
            }
        }
    }

    pub fn a(&self, grid: &Arc<HeisenbergGrid>) -> RealField {
        match *self {
            Preset::Homogeneous { a0, .. } => RealField::constant(grid, a0),
            Preset::PinchedDemo => RealField::from_fn(grid, |_, y, _| 0.25 + 0.2 * (2.0 * PI * y).sin()),
        }
    }
}
