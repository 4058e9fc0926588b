//! IMEX time stepping for the four movement regimes.
//!
//! One step is Lie-split: an explicit Euler reaction update followed by a
//! backward-Euler diffusion solve for every mobile compartment.

use std::cell::RefCell;

use serde::Serialize;

use crate::analysis::{harnack_ratio, infection_support, lyapunov_di, lyapunov_ds};
use crate::discretization::{neumann_laplacian, recovery_minus_incidence, ImplicitDiffusion};
use crate::error::{check_len, Error, Result};
use crate::field::Coefficients;
use crate::grid::Grid;
use crate::regions::DEFAULT_TOL_RISK;
use crate::state::{total_mass, EpidemicState, ModelKind};

/// Safety factor in `dt <= POSITIVITY_FACTOR / max(max beta, max gamma)`.
pub const POSITIVITY_FACTOR: f64 = 0.5;

pub const DEFAULT_PLATEAU_TOL: f64 = 1e-2;

pub fn positivity_bound(coef: &Coefficients) -> f64 {
    POSITIVITY_FACTOR / coef.max_rate()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: ModelKind,
    pub dt: f64,
    pub t_end: f64,
    /// Steps between recorded frames.
    pub output_every: usize,
    /// Relative frame-to-frame change per unit time below which a run counts as steady.
    pub steady_tol: f64,
    /// `max I` below which the infection counts as extinct.
    pub extinct_tol: f64,
    /// Allowed relative drift of the total population.
    pub mass_tol: f64,
    pub tol_risk: f64,
    /// Relative variation of `∫I` over the final quarter of the run below which a
    /// surviving infection counts as settled.
    pub plateau_tol: f64,
}

impl RunConfig {
    pub fn new(model: ModelKind, dt: f64, t_end: f64) -> Self {
        Self {
            model,
            dt,
            t_end,
            output_every: 10_000,
            steady_tol: 1e-8,
            extinct_tol: 1e-3,
            mass_tol: 1e-8,
            tol_risk: DEFAULT_TOL_RISK,
            plateau_tol: DEFAULT_PLATEAU_TOL,
        }
    }

    pub fn validate(&self, coef: &Coefficients) -> Result<()> {
        self.model.validate()?;
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        let bound = positivity_bound(coef);
        if self.dt > bound {
            return Err(Error::Config(format!(
                "dt = {} exceeds the positivity bound 0.5/max(beta, gamma) = {bound}",
                self.dt
            )));
        }
        if !(self.t_end >= self.dt) || !self.t_end.is_finite() {
            return Err(Error::Config(format!(
                "t_end = {} must be finite and at least dt = {}",
                self.t_end, self.dt
            )));
        }
        if self.output_every == 0 {
            return Err(Error::Config("output_every must be positive".into()));
        }
        for (name, v) in [
            ("steady_tol", self.steady_tol),
            ("extinct_tol", self.extinct_tol),
            ("mass_tol", self.mass_tol),
            ("tol_risk", self.tol_risk),
            ("plateau_tol", self.plateau_tol),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Config(format!(
                    "{name} must be nonnegative, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Reusable stepper holding the diffusion factorizations for a fixed `dt`.
#[derive(Debug, Clone)]
pub struct Stepper<'a> {
    coef: &'a Coefficients,
    dt: f64,
    bound: f64,
    s_diffusion: Option<ImplicitDiffusion>,
    i_diffusion: Option<ImplicitDiffusion>,
    work: RefCell<Vec<f64>>,
}

impl<'a> Stepper<'a> {
    pub fn new(model: ModelKind, coef: &'a Coefficients, grid: &Grid, dt: f64) -> Result<Self> {
        check_len(grid.n_cells(), coef.n_cells())?;
        model.validate()?;
        let factor = |d: f64| -> Result<Option<ImplicitDiffusion>> {
            if d > 0.0 {
                ImplicitDiffusion::new(&neumann_laplacian(grid, d), dt).map(Some)
            } else {
                Ok(None)
            }
        };
        Ok(Self {
            coef,
            dt,
            bound: positivity_bound(coef),
            s_diffusion: factor(model.d_s())?,
            i_diffusion: factor(model.d_i())?,
            work: RefCell::new(Vec::with_capacity(grid.n_cells())),
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advances `state` by one step of length `dt`.
    pub fn advance(&self, state: &mut EpidemicState) -> Result<()> {
        let n = self.coef.n_cells();
        check_len(n, state.s.len())?;
        check_len(n, state.i.len())?;
        let (b, g, m) = (
            self.coef.beta.values(),
            self.coef.gamma.values(),
            self.coef.m.values(),
        );
        let dt = self.dt;
        let mut bad = None;
        for k in 0..n {
            let (s, i) = (state.s[k], state.i[k]);
            let flow = recovery_minus_incidence(b[k], g[k], m[k], s, i);
            let (s_new, i_new) = (s + dt * flow, i - dt * flow);
            if !(s_new >= 0.0 && i_new >= 0.0) && bad.is_none() {
                bad = Some(k);
            }
            state.s[k] = s_new;
            state.i[k] = i_new;
        }
        if let Some(k) = bad {
            let (s, i) = (state.s[k], state.i[k]);
            if !(s.is_finite() && i.is_finite()) {
                return Err(Error::Numerical(format!(
                    "non-finite density in cell {k} at t={}",
                    state.t
                )));
            }
            return Err(Error::StepSize {
                dt,
                bound: self.bound,
            });
        }
        let mut work = self.work.borrow_mut();
        if let Some(solver) = &self.s_diffusion {
            solver.step_in_place(&mut state.s, &mut work)?;
        }
        if let Some(solver) = &self.i_diffusion {
            solver.step_in_place(&mut state.i, &mut work)?;
        }
        state.t += dt;
        Ok(())
    }
}

/// One IMEX step of length `dt` from `state`.
pub fn step(
    state: &EpidemicState,
    model: ModelKind,
    coef: &Coefficients,
    grid: &Grid,
    dt: f64,
) -> Result<EpidemicState> {
    let stepper = Stepper::new(model, coef, grid, dt)?;
    let mut next = state.clone();
    stepper.advance(&mut next)?;
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameDiagnostics {
    pub t: f64,
    pub mass: f64,
    pub max_i: f64,
    pub min_s: f64,
    pub min_i: f64,
    pub harnack: f64,
    /// NaN when no dissipation identity applies to the model and coefficients.
    pub lyapunov: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub frames: Vec<EpidemicState>,
    pub diagnostics: Vec<FrameDiagnostics>,
    /// Number of integration steps taken between consecutive frames.
    pub steps_between: Vec<usize>,
}

impl Trajectory {
    pub fn last(&self) -> &EpidemicState {
        self.frames
            .last()
            .expect("trajectory has at least the initial frame")
    }

    pub fn max_relative_mass_drift(&self) -> f64 {
        let n0 = self.diagnostics[0].mass;
        self.diagnostics
            .iter()
            .map(|d| ((d.mass - n0) / n0).abs())
            .fold(0.0, f64::max)
    }
}

enum LyapunovKind {
    Ds,
    Di(Vec<bool>),
    None,
}

struct Monitor<'a> {
    coef: &'a Coefficients,
    grid: &'a Grid,
    config: &'a RunConfig,
    kind: LyapunovKind,
    mass0: f64,
}

impl Monitor<'_> {
    fn record(&self, state: &EpidemicState) -> Result<FrameDiagnostics> {
        state.check_nonnegative()?;
        let mass = total_mass(state, self.grid)?;
        let drift = ((mass - self.mass0) / self.mass0).abs();
        if !(drift <= self.config.mass_tol) {
            return Err(Error::Conservation {
                t: state.t,
                drift,
                tol: self.config.mass_tol,
            });
        }
        let lyapunov = match &self.kind {
            LyapunovKind::Ds => lyapunov_ds(state, self.coef, self.grid)?,
            LyapunovKind::Di(support) => {
                lyapunov_di(state, self.coef, self.grid, support, self.config.tol_risk)?
            }
            LyapunovKind::None => f64::NAN,
        };
        Ok(FrameDiagnostics {
            t: state.t,
            mass,
            max_i: state.max_i(),
            min_s: state.min_s(),
            min_i: state.min_i(),
            harnack: harnack_ratio(&state.i),
            lyapunov,
        })
    }
}

/// Integrates from `init` to `config.t_end`, recording a frame every
/// `config.output_every` steps plus the initial and final states.
pub fn integrate(
    init: &EpidemicState,
    config: &RunConfig,
    coef: &Coefficients,
    grid: &Grid,
) -> Result<Trajectory> {
    config.validate(coef)?;
    check_len(grid.n_cells(), init.n_cells())?;
    init.check_nonnegative()?;
    let mass0 = total_mass(init, grid)?;
    if !(mass0 > 0.0) {
        return Err(Error::Config(format!(
            "initial mass must be positive, got {mass0}"
        )));
    }
    let all_high = coef
        .beta
        .values()
        .iter()
        .zip(coef.gamma.values())
        .all(|(b, g)| b > g);
    let kind = match config.model {
        ModelKind::DsZero { .. } if all_high => LyapunovKind::Ds,
        ModelKind::DiZero { .. } => {
            LyapunovKind::Di(infection_support(&init.i, config.extinct_tol))
        }
        _ => LyapunovKind::None,
    };
    let monitor = Monitor {
        coef,
        grid,
        config,
        kind,
        mass0,
    };

    let t0 = init.t;
    let horizon = config.t_end - t0;
    let full_steps = (horizon / config.dt + 1e-9).floor() as usize;
    let remainder = horizon - full_steps as f64 * config.dt;
    let has_tail = remainder > 1e-9 * config.dt;

    let stepper = Stepper::new(config.model, coef, grid, config.dt)?;
    let mut state = init.clone();
    let mut traj = Trajectory {
        frames: vec![state.clone()],
        diagnostics: vec![monitor.record(&state)?],
        steps_between: Vec::new(),
    };
    let mut since_frame = 0;
    for k in 1..=full_steps {
        stepper.advance(&mut state)?;
        // avoid accumulating rounding in t
        state.t = t0 + k as f64 * config.dt;
        since_frame += 1;
        let last = k == full_steps && !has_tail;
        if k % config.output_every == 0 || last {
            traj.diagnostics.push(monitor.record(&state)?);
            traj.frames.push(state.clone());
            traj.steps_between.push(since_frame);
            since_frame = 0;
        }
    }
    if has_tail {
        let tail = Stepper::new(config.model, coef, grid, remainder)?;
        tail.advance(&mut state)?;
        state.t = config.t_end;
        traj.diagnostics.push(monitor.record(&state)?);
        traj.frames.push(state);
        traj.steps_between.push(since_frame + 1);
    }
    Ok(traj)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Extinct,
    Endemic,
    Undecided,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Extinct => "EXTINCT",
            Classification::Endemic => "ENDEMIC",
            Classification::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndemicRule {
    /// Frame-to-frame change below `steady_tol`.
    Steady,
    /// Still converging (typically algebraically near the edge of the infected
    /// region) but the infected mass has levelled off.
    Plateau,
}

#[derive(Debug, Clone, Serialize)]
pub struct SteadyStateReport {
    pub classification: Classification,
    pub final_time: f64,
    /// Relative change per unit time between the last two frames.
    pub final_rel_change: f64,
    /// Earliest frame time from which every later frame change stays below `steady_tol`.
    pub steady_since: Option<f64>,
    /// Largest relative deviation of `∫I` from its final value over the last quarter.
    pub plateau_change: f64,
    /// Rule that produced an ENDEMIC verdict.
    pub endemic_rule: Option<EndemicRule>,
    pub max_i: f64,
    pub min_i: f64,
    pub s_limit: Vec<f64>,
    pub i_limit: Vec<f64>,
}

fn sup_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// `max(|ΔS|, |ΔI|)_∞ / (Δt · max(|S|, |I|)_∞)` between two frames.
pub fn relative_change(prev: &EpidemicState, next: &EpidemicState) -> f64 {
    let dt = next.t - prev.t;
    let diff = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()))
    };
    let delta = diff(&prev.s, &next.s).max(diff(&prev.i, &next.i));
    let scale = sup_norm(&next.s)
        .max(sup_norm(&next.i))
        .max(f64::MIN_POSITIVE);
    if dt > 0.0 {
        delta / (dt * scale)
    } else {
        f64::INFINITY
    }
}

/// `max_k |∫I_k - ∫I_end| / ∫I_end` over frames in the last quarter of the run.
/// Infinite when fewer than two frames fall in that window.
pub fn plateau_change(traj: &Trajectory) -> f64 {
    let last = traj.last();
    let t0 = traj.frames[0].t;
    let start = last.t - 0.25 * (last.t - t0);
    let window: Vec<&EpidemicState> = traj.frames.iter().filter(|f| f.t >= start).collect();
    if window.len() < 2 {
        return f64::INFINITY;
    }
    let mass = |f: &EpidemicState| f.i.iter().sum::<f64>();
    let end = mass(last);
    if !(end > 0.0) {
        return f64::INFINITY;
    }
    window
        .iter()
        .fold(0.0f64, |acc, f| acc.max((mass(f) - end).abs() / end))
}

/// Long-time classification of a trajectory.
///
/// EXTINCT when the final `max I < extinct_tol`. ENDEMIC when infection remains
/// somewhere and either the last frame change is below `steady_tol` or `∫I` has
/// varied by less than `plateau_tol` over the last quarter. UNDECIDED otherwise.
pub fn detect_steady_state(traj: &Trajectory, config: &RunConfig) -> SteadyStateReport {
    let last = traj.last();
    let changes: Vec<f64> = traj
        .frames
        .windows(2)
        .map(|w| relative_change(&w[0], &w[1]))
        .collect();
    let final_rel_change = changes.last().copied().unwrap_or(f64::INFINITY);
    let mut steady_since = None;
    for (k, c) in changes.iter().enumerate().rev() {
        if *c < config.steady_tol {
            steady_since = Some(traj.frames[k].t);
        } else {
            break;
        }
    }
    let max_i = last.max_i();
    let plateau = plateau_change(traj);
    let mut endemic_rule = None;
    let classification = if max_i < config.extinct_tol {
        Classification::Extinct
    } else if final_rel_change < config.steady_tol {
        endemic_rule = Some(EndemicRule::Steady);
        Classification::Endemic
    } else if plateau < config.plateau_tol {
        endemic_rule = Some(EndemicRule::Plateau);
        Classification::Endemic
    } else {
        Classification::Undecided
    };
    SteadyStateReport {
        classification,
        final_time: last.t,
        final_rel_change,
        steady_since,
        plateau_change: plateau,
        endemic_rule,
        max_i,
        min_i: last.min_i(),
        s_limit: last.s.clone(),
        i_limit: last.i.clone(),
    }
}
