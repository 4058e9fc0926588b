//! Scenario files, built-in experiments, runs, sweeps and their on-disk outputs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    endemic_limit_di, endemic_limit_ds, high_risk_threshold, infection_support,
    ode_pointwise_limit, persistence_conditions_ds, solve_sstar, DiConditions, OdeLimit,
    PersistenceCondition,
};
use crate::eigen::{eigen_report, EigenReport};
use crate::error::{Error, Result};
use crate::field::{sample_field, Coefficients, Expr, FieldRole};
use crate::grid::Grid;
use crate::models::{
    detect_steady_state, integrate, Classification, EndemicRule, RunConfig, SteadyStateReport,
    Trajectory, DEFAULT_PLATEAU_TOL,
};
use crate::regions::{classify_regions, RegionMasks, DEFAULT_TOL_RISK};
use crate::state::{total_mass, EpidemicState, ModelKind};

/// Analyses that can be requested in a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisKind {
    Threshold,
    EndemicDs,
    PersistenceDs,
    EndemicDi,
    SStar,
    OdeLimit,
    Eigen,
}

fn default_n_cells() -> usize {
    400
}
fn default_dt() -> f64 {
    1e-3
}
fn default_t_end() -> f64 {
    600.0
}
fn default_output_every() -> usize {
    10_000
}
fn default_steady_tol() -> f64 {
    1e-8
}
fn default_extinct_tol() -> f64 {
    1e-3
}
fn default_mass_tol() -> f64 {
    1e-8
}
fn default_tol_risk() -> f64 {
    DEFAULT_TOL_RISK
}
fn default_plateau_tol() -> f64 {
    DEFAULT_PLATEAU_TOL
}
fn default_s0() -> Expr {
    Expr::ScaledCosine { a: 1.0, c: 2.0 }
}
fn default_i0() -> Expr {
    Expr::ScaledCosine { a: 1.0, c: 1.5 }
}
fn default_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub model: ModelKind,
    #[serde(default = "default_n_cells")]
    pub n_cells: usize,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_output_every")]
    pub output_every: usize,
    #[serde(default = "default_steady_tol")]
    pub steady_tol: f64,
    #[serde(default = "default_extinct_tol")]
    pub extinct_tol: f64,
    #[serde(default = "default_mass_tol")]
    pub mass_tol: f64,
    #[serde(default = "default_tol_risk")]
    pub tol_risk: f64,
    #[serde(default = "default_plateau_tol")]
    pub plateau_tol: f64,
    pub beta: Expr,
    pub gamma: Expr,
    pub m: Expr,
    #[serde(default = "default_s0")]
    pub s0: Expr,
    #[serde(default = "default_i0")]
    pub i0: Expr,
    /// Initial data is `(a S0, a I0)`.
    #[serde(default = "default_scale")]
    pub init_scale: f64,
    /// Empty means every analysis applicable to the model.
    #[serde(default)]
    pub analyses: Vec<AnalysisKind>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

/// Grid, coefficients and initial state built from a scenario.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub grid: Grid,
    pub coef: Coefficients,
    pub masks: RegionMasks,
    pub init: EpidemicState,
    pub config: RunConfig,
}

impl Scenario {
    pub fn new(name: &str, model: ModelKind, beta: Expr, gamma: Expr, m: Expr) -> Self {
        Self {
            name: name.to_string(),
            model,
            n_cells: default_n_cells(),
            dt: default_dt(),
            t_end: default_t_end(),
            output_every: default_output_every(),
            steady_tol: default_steady_tol(),
            extinct_tol: default_extinct_tol(),
            mass_tol: default_mass_tol(),
            tol_risk: default_tol_risk(),
            plateau_tol: default_plateau_tol(),
            beta,
            gamma,
            m,
            s0: default_s0(),
            i0: default_i0(),
            init_scale: default_scale(),
            analyses: Vec::new(),
            output_dir: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("scenario parse error: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn config(&self) -> RunConfig {
        RunConfig {
            model: self.model,
            dt: self.dt,
            t_end: self.t_end,
            output_every: self.output_every,
            steady_tol: self.steady_tol,
            extinct_tol: self.extinct_tol,
            mass_tol: self.mass_tol,
            tol_risk: self.tol_risk,
            plateau_tol: self.plateau_tol,
        }
    }

    /// Samples everything on the grid and validates the run configuration.
    pub fn prepare(&self) -> Result<Prepared> {
        if !(self.init_scale > 0.0) || !self.init_scale.is_finite() {
            return Err(Error::Config(format!(
                "init_scale must be positive, got {}",
                self.init_scale
            )));
        }
        let grid = Grid::new(self.n_cells, 0.0, 1.0)?;
        let coef = Coefficients::sample(self.beta, self.gamma, self.m, &grid)?;
        let masks = classify_regions(&coef, self.tol_risk)?;
        let scale = |e: Expr| -> Result<Vec<f64>> {
            let f = sample_field(e, &grid, FieldRole::Density)?;
            Ok(f.values().iter().map(|v| self.init_scale * v).collect())
        };
        let init = EpidemicState::new(0.0, scale(self.s0)?, scale(self.i0)?)?;
        let config = self.config();
        config.validate(&coef)?;
        Ok(Prepared {
            grid,
            coef,
            masks,
            init,
            config,
        })
    }

    fn default_analyses(&self) -> Vec<AnalysisKind> {
        use AnalysisKind::*;
        match self.model {
            ModelKind::DsZero { .. } | ModelKind::Full { .. } => {
                vec![Threshold, EndemicDs, PersistenceDs, Eigen]
            }
            ModelKind::DiZero { .. } => vec![EndemicDi, SStar],
            ModelKind::Ode => vec![OdeLimit],
        }
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("out").join(&self.name))
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RegionCounts {
    pub high: usize,
    pub moderate: usize,
    pub low: usize,
    pub m_zero: usize,
}

/// Closed-form predictions for a scenario; absent entries do not apply.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Predictions {
    pub total_population: f64,
    pub regions: RegionCounts,
    pub threshold: Option<f64>,
    pub feasible: Option<bool>,
    #[serde(rename = "S_tilde")]
    pub s_tilde: Option<Vec<f64>>,
    #[serde(rename = "I_tilde")]
    pub i_tilde: Option<f64>,
    pub persistence_ds: Option<PersistenceCondition>,
    #[serde(rename = "S_hat")]
    pub s_hat: Option<f64>,
    #[serde(rename = "I_hat")]
    pub i_hat: Option<Vec<f64>>,
    pub conditions: Option<DiConditions>,
    #[serde(rename = "S_star")]
    pub s_star: Option<f64>,
    #[serde(rename = "I_star")]
    pub i_star: Option<Vec<f64>>,
    pub ode: Option<OdeLimit>,
    pub eigen: Option<EigenReport>,
    /// Requested analyses whose hypotheses do not hold, with the reason.
    pub notes: Vec<String>,
}

fn soft<T>(notes: &mut Vec<String>, what: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ (Error::DomainAssumption(_) | Error::Monotonicity(_))) => {
            notes.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Evaluates the requested (or default) analyses without integrating.
pub fn analyze(scenario: &Scenario, prep: &Prepared) -> Result<Predictions> {
    let Prepared {
        grid,
        coef,
        masks,
        init,
        ..
    } = prep;
    let n_total = total_mass(init, grid)?;
    let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
    let mut p = Predictions {
        total_population: n_total,
        regions: RegionCounts {
            high: count(&masks.high),
            moderate: count(&masks.moderate),
            low: count(&masks.low),
            m_zero: count(&masks.m_zero),
        },
        ..Default::default()
    };
    let support = infection_support(&init.i, scenario.extinct_tol);
    let requested = if scenario.analyses.is_empty() {
        scenario.default_analyses()
    } else {
        scenario.analyses.clone()
    };
    for kind in requested {
        let notes = &mut p.notes;
        match kind {
            AnalysisKind::Threshold => {
                p.threshold = soft(notes, "threshold", high_risk_threshold(coef, grid))?;
            }
            AnalysisKind::EndemicDs => {
                if let Some(e) = soft(notes, "endemic_ds", endemic_limit_ds(coef, grid, n_total))? {
                    p.threshold = Some(e.threshold);
                    p.feasible = Some(e.feasible);
                    p.i_tilde = Some(e.i_tilde);
                    p.s_tilde = e.s_tilde;
                }
            }
            AnalysisKind::PersistenceDs => {
                p.persistence_ds = soft(
                    notes,
                    "persistence_ds",
                    persistence_conditions_ds(&init.s, &init.i, coef, grid, n_total),
                )?;
            }
            AnalysisKind::EndemicDi => {
                if let Some(e) = soft(
                    notes,
                    "endemic_di",
                    endemic_limit_di(coef, grid, n_total, &support),
                )? {
                    p.s_hat = Some(e.s_hat);
                    p.i_hat = Some(e.i_hat);
                    p.conditions = Some(e.conditions);
                }
            }
            AnalysisKind::SStar => {
                if let Some(s) = soft(notes, "s_star", solve_sstar(coef, grid, n_total, &support))?
                {
                    p.s_star = Some(s.s_star);
                    p.i_star = Some(s.i_limit);
                }
            }
            AnalysisKind::OdeLimit => {
                let n: Vec<f64> = init.s.iter().zip(&init.i).map(|(s, i)| s + i).collect();
                p.ode = Some(ode_pointwise_limit(coef, &n)?);
            }
            AnalysisKind::Eigen => {
                let d_i = scenario.model.d_i();
                if d_i > 0.0 {
                    p.eigen = eigen_report(grid, masks, &coef.excess(), d_i)?;
                    if p.eigen.is_none() {
                        notes.push(
                            "eigen: no high-risk saturation-free run of 3 or more cells".into(),
                        );
                    }
                } else {
                    notes.push("eigen: model has no infected diffusion".into());
                }
            }
        }
    }
    Ok(p)
}

/// Long-time profiles a simulation is compared against.
#[derive(Debug, Clone)]
pub struct Reference {
    pub label: &'static str,
    pub s: Option<Vec<f64>>,
    pub i: Vec<f64>,
}

/// Picks the closed-form limit that applies to the scenario's model and coefficients.
pub fn reference_limit(
    scenario: &Scenario,
    prep: &Prepared,
    pred: &Predictions,
) -> Option<Reference> {
    let n = prep.grid.n_cells();
    let flat = |v: f64| vec![v; n];
    let uniform_s = pred.total_population / prep.grid.measure();
    match scenario.model {
        ModelKind::DsZero { .. } => match (pred.feasible, &pred.s_tilde, pred.i_tilde) {
            (Some(true), Some(s), Some(i)) => Some(Reference {
                label: "endemic_ds",
                s: Some(s.clone()),
                i: flat(i),
            }),
            _ => Some(Reference {
                label: "extinction",
                s: None,
                i: flat(0.0),
            }),
        },
        ModelKind::DiZero { .. } => {
            if let (Some(s), Some(i)) = (pred.s_star, &pred.i_star) {
                return Some(Reference {
                    label: "s_star",
                    s: Some(flat(s)),
                    i: i.clone(),
                });
            }
            let extinct = pred.conditions.is_some_and(|c| c.extinction) || prep.masks.no_high();
            if extinct {
                return Some(Reference {
                    label: "extinction_uniform",
                    s: Some(flat(uniform_s)),
                    i: flat(0.0),
                });
            }
            match (pred.conditions, pred.s_hat, &pred.i_hat) {
                (Some(c), Some(s), Some(i)) if c.persistence_first || c.persistence_second => {
                    Some(Reference {
                        label: "endemic_di",
                        s: Some(flat(s)),
                        i: i.clone(),
                    })
                }
                _ => None,
            }
        }
        ModelKind::Ode => pred.ode.as_ref().map(|o| Reference {
            label: "ode_limit",
            s: Some(o.s_inf.clone()),
            i: o.i_inf.clone(),
        }),
        ModelKind::Full { .. } => None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub reference: Option<&'static str>,
    #[serde(rename = "maxAbsErr_S")]
    pub max_abs_err_s: Option<f64>,
    #[serde(rename = "maxAbsErr_I")]
    pub max_abs_err_i: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub name: String,
    pub model: ModelKind,
    pub classification: Classification,
    pub final_time: f64,
    pub final_rel_change: f64,
    pub steady_since: Option<f64>,
    pub endemic_rule: Option<EndemicRule>,
    pub plateau_change: f64,
    pub total_population: f64,
    pub max_rel_mass_drift: f64,
    #[serde(rename = "max_I")]
    pub max_i: f64,
    #[serde(rename = "min_I")]
    pub min_i: f64,
    #[serde(rename = "int_I")]
    pub int_i: f64,
    #[serde(rename = "S_mean")]
    pub s_mean: f64,
    pub predicted_vs_observed: Comparison,
}

/// Everything a run produced, before anything is written.
#[derive(Debug, Clone)]
pub struct SimOutcome {
    pub prepared: Prepared,
    pub trajectory: Trajectory,
    pub report: SteadyStateReport,
    pub predictions: Predictions,
    pub summary: RunSummary,
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Integrates a scenario and compares the final state with the applicable prediction.
pub fn simulate(scenario: &Scenario) -> Result<SimOutcome> {
    let prepared = scenario.prepare()?;
    let predictions = analyze(scenario, &prepared)?;
    let trajectory = integrate(
        &prepared.init,
        &prepared.config,
        &prepared.coef,
        &prepared.grid,
    )?;
    let report = detect_steady_state(&trajectory, &prepared.config);
    let last = trajectory.last();
    let grid = &prepared.grid;
    let reference = reference_limit(scenario, &prepared, &predictions);
    let comparison = Comparison {
        reference: reference.as_ref().map(|r| r.label),
        max_abs_err_s: reference
            .as_ref()
            .and_then(|r| r.s.as_ref())
            .map(|s| max_abs_diff(s, &last.s)),
        max_abs_err_i: reference.as_ref().map(|r| max_abs_diff(&r.i, &last.i)),
    };
    let summary = RunSummary {
        name: scenario.name.clone(),
        model: scenario.model,
        classification: report.classification,
        final_time: report.final_time,
        final_rel_change: report.final_rel_change,
        steady_since: report.steady_since,
        endemic_rule: report.endemic_rule,
        plateau_change: report.plateau_change,
        total_population: trajectory.diagnostics[0].mass,
        max_rel_mass_drift: trajectory.max_relative_mass_drift(),
        max_i: report.max_i,
        min_i: report.min_i,
        int_i: grid.integrate(&last.i),
        s_mean: grid.integrate(&last.s) / grid.measure(),
        predicted_vs_observed: comparison,
    };
    Ok(SimOutcome {
        prepared,
        trajectory,
        report,
        predictions,
        summary,
    })
}

/// Float formatting used in every emitted file: 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn profile_csv(grid: &Grid, state: &EpidemicState) -> String {
    let mut out = String::from("x,S,I\n");
    for (k, x) in grid.centers().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_f64(*x),
            fmt_f64(state.s[k]),
            fmt_f64(state.i[k])
        );
    }
    out
}

pub fn diagnostics_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,mass,maxI,minS,minI,harnack,lyapunov\n");
    for d in &traj.diagnostics {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(d.t),
            fmt_f64(d.mass),
            fmt_f64(d.max_i),
            fmt_f64(d.min_s),
            fmt_f64(d.min_i),
            fmt_f64(d.harnack),
            fmt_f64(d.lyapunov)
        );
    }
    out
}

/// Writes `profiles/frame_NNNNN.csv`, `final.csv`, `diagnostics.csv`,
/// `predictions.json` and `summary.json` under `dir`.
pub fn write_outputs(outcome: &SimOutcome, dir: &Path) -> Result<()> {
    let profiles = dir.join("profiles");
    fs::create_dir_all(&profiles)?;
    let grid = &outcome.prepared.grid;
    for (k, frame) in outcome.trajectory.frames.iter().enumerate() {
        fs::write(
            profiles.join(format!("frame_{k:05}.csv")),
            profile_csv(grid, frame),
        )?;
    }
    fs::write(
        dir.join("final.csv"),
        profile_csv(grid, outcome.trajectory.last()),
    )?;
    fs::write(
        dir.join("diagnostics.csv"),
        diagnostics_csv(&outcome.trajectory),
    )?;
    write_json(&dir.join("predictions.json"), &outcome.predictions)?;
    write_json(&dir.join("summary.json"), &outcome.summary)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Simulates `scenario` and writes all outputs to `dir`.
pub fn run_scenario(scenario: &Scenario, dir: &Path) -> Result<RunSummary> {
    let outcome = simulate(scenario)?;
    write_outputs(&outcome, dir)?;
    Ok(outcome.summary)
}

/// Scenario parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    InitScale,
    DS,
    DI,
    /// Additive offset `k` of the transmission-rate expression.
    BetaOffset,
}

impl FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "init_scale" | "a" => Ok(SweepParam::InitScale),
            "d_S" | "d_s" => Ok(SweepParam::DS),
            "d_I" | "d_i" => Ok(SweepParam::DI),
            "k" | "beta_offset" => Ok(SweepParam::BetaOffset),
            other => Err(Error::Config(format!(
                "unknown sweep parameter `{other}` (expected init_scale, d_S, d_I or k)"
            ))),
        }
    }
}

impl SweepParam {
    pub fn apply(&self, base: &Scenario, value: f64) -> Result<Scenario> {
        let mut sc = base.clone();
        match self {
            SweepParam::InitScale => sc.init_scale = value,
            SweepParam::DS => match &mut sc.model {
                ModelKind::Full { d_s, .. } | ModelKind::DiZero { d_s } => *d_s = value,
                _ => {
                    return Err(Error::Config(format!(
                        "{} model has no d_S",
                        sc.model.name()
                    )))
                }
            },
            SweepParam::DI => match &mut sc.model {
                ModelKind::Full { d_i, .. } | ModelKind::DsZero { d_i } => *d_i = value,
                _ => {
                    return Err(Error::Config(format!(
                        "{} model has no d_I",
                        sc.model.name()
                    )))
                }
            },
            SweepParam::BetaOffset => sc.beta = sc.beta.with_offset(value)?,
        }
        Ok(sc)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub classification: Option<Classification>,
    #[serde(rename = "int_I")]
    pub int_i: f64,
    #[serde(rename = "max_I")]
    pub max_i: f64,
    #[serde(rename = "S_mean")]
    pub s_mean: f64,
    pub error: Option<String>,
    /// Final state, kept for callers that inspect profiles.
    #[serde(skip)]
    pub outcome: Option<Box<SimOutcome>>,
}

/// Runs one simulation per value (in parallel); rows come back in input order.
///
/// When `out_dir` is set each run writes its outputs to `out_dir/run_NNN`.
pub fn sweep(
    base: &Scenario,
    param: SweepParam,
    values: &[f64],
    out_dir: Option<&Path>,
) -> Vec<SweepRow> {
    values
        .par_iter()
        .enumerate()
        .map(|(idx, &value)| {
            let result = param.apply(base, value).and_then(|mut sc| {
                sc.name = format!("{}_{idx:03}", base.name);
                let outcome = simulate(&sc)?;
                if let Some(dir) = out_dir {
                    write_outputs(&outcome, &dir.join(format!("run_{idx:03}")))?;
                }
                Ok(outcome)
            });
            match result {
                Ok(o) => SweepRow {
                    value,
                    classification: Some(o.summary.classification),
                    int_i: o.summary.int_i,
                    max_i: o.summary.max_i,
                    s_mean: o.summary.s_mean,
                    error: None,
                    outcome: Some(Box::new(o)),
                },
                Err(e) => SweepRow {
                    value,
                    classification: None,
                    int_i: f64::NAN,
                    max_i: f64::NAN,
                    s_mean: f64::NAN,
                    error: Some(e.to_string()),
                    outcome: None,
                },
            }
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("value,classification,int_I,max_I,S_mean,error\n");
    for r in rows {
        let class = r.classification.map(|c| c.to_string()).unwrap_or_default();
        let err = r
            .error
            .as_deref()
            .map(|e| format!("\"{}\"", e.replace('"', "'")))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(r.value),
            class,
            fmt_f64(r.int_i),
            fmt_f64(r.max_i),
            fmt_f64(r.s_mean),
            err
        );
    }
    out
}

/// Built-in experiment with a one-line description.
pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn() -> Scenario,
}

fn ds(name: &str, d_i: f64, beta: Expr, gamma: Expr, m: Expr) -> Scenario {
    Scenario::new(name, ModelKind::DsZero { d_i }, beta, gamma, m)
}

fn di(name: &str, beta: Expr, gamma: Expr, m: Expr, a: f64) -> Scenario {
    let mut sc = Scenario::new(name, ModelKind::DiZero { d_s: 1.0 }, beta, gamma, m);
    sc.init_scale = a;
    sc
}

const fn affine(k: f64, c: f64) -> Expr {
    Expr::Affine { k, c }
}

const GAMMA_5X: Expr = affine(5.0, 1.0);
const M0: Expr = Expr::PaperM0;

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "sim1a",
        description: "immobile S, d_I=1, beta=6+x, gamma=5+x, m=m0: endemic",
        build: || ds("sim1a", 1.0, affine(6.0, 1.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim1b",
        description: "immobile S, d_I=1, beta=5.1+x, gamma=5+x, m=m0: extinction",
        build: || ds("sim1b", 1.0, affine(5.1, 1.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim1c",
        description: "immobile S, d_I=0.1, beta=5.2+x, gamma=5+x, m=m0: S depleted in part of M0",
        build: || ds("sim1c", 0.1, affine(5.2, 1.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim1d",
        description: "immobile S, d_I=0.21, beta=5.2+x, gamma=5+x, m=m0",
        build: || ds("sim1d", 0.21, affine(5.2, 1.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim1e",
        description: "immobile S, d_I=0.5, beta=5.2+x, gamma=5+x, m=m0: S persists",
        build: || ds("sim1e", 0.5, affine(5.2, 1.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim2a",
        description: "immobile S, beta=max(5+x,4+3x), gamma=5+x, m=m0: H0=[0,0.5]",
        build: || {
            let beta = Expr::AffineMax {
                k1: 5.0,
                c1: 1.0,
                k2: 4.0,
                c2: 3.0,
            };
            ds("sim2a", 1.0, beta, GAMMA_5X, M0)
        },
    },
    Builtin {
        name: "sim2b",
        description: "immobile S, beta=max(5+x,7-3x), gamma=5+x, m=m0: H0=[0.5,1]",
        build: || {
            let beta = Expr::AffineMax {
                k1: 5.0,
                c1: 1.0,
                k2: 7.0,
                c2: -3.0,
            };
            ds("sim2b", 1.0, beta, GAMMA_5X, M0)
        },
    },
    Builtin {
        name: "sim2c",
        description: "immobile S, beta=max(5+x,4+3x), gamma=5+x, m=1",
        build: || {
            let beta = Expr::AffineMax {
                k1: 5.0,
                c1: 1.0,
                k2: 4.0,
                c2: 3.0,
            };
            ds("sim2c", 1.0, beta, GAMMA_5X, Expr::Constant(1.0))
        },
    },
    Builtin {
        name: "sim3a",
        description: "immobile S, beta=5.5-x, gamma=5+x, m=m0",
        build: || ds("sim3a", 1.0, affine(5.5, -1.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim3b",
        description: "immobile S, beta=6-x, gamma=5+x, m=m0",
        build: || ds("sim3b", 1.0, affine(6.0, -1.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim3c",
        description: "immobile S, beta=6.5-x, gamma=5+x, m=m0",
        build: || ds("sim3c", 1.0, affine(6.5, -1.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim3d",
        description: "immobile S, beta=4.25+2x, gamma=5+x, m=m0",
        build: || ds("sim3d", 1.0, affine(4.25, 2.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim3e",
        description: "immobile S, beta=4.5+2x, gamma=5+x, m=m0",
        build: || ds("sim3e", 1.0, affine(4.5, 2.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim3f",
        description: "immobile S, beta=4.75+2x, gamma=5+x, m=m0",
        build: || ds("sim3f", 1.0, affine(4.75, 2.0), GAMMA_5X, M0),
    },
    Builtin {
        name: "sim4a",
        description: "immobile I, d_S=1, beta=1+x, gamma=0.8, m=1, a=0.1: extinction",
        build: || {
            di(
                "sim4a",
                affine(1.0, 1.0),
                Expr::Constant(0.8),
                Expr::Constant(1.0),
                0.1,
            )
        },
    },
    Builtin {
        name: "sim4b",
        description: "immobile I, d_S=1, beta=1+x, gamma=0.8, m=1, a=0.5: partial persistence",
        build: || {
            di(
                "sim4b",
                affine(1.0, 1.0),
                Expr::Constant(0.8),
                Expr::Constant(1.0),
                0.5,
            )
        },
    },
    Builtin {
        name: "sim4c",
        description: "immobile I, d_S=1, beta=1+x, gamma=2.5, m=1, a=1: extinction",
        build: || {
            di(
                "sim4c",
                affine(1.0, 1.0),
                Expr::Constant(2.5),
                Expr::Constant(1.0),
                1.0,
            )
        },
    },
    Builtin {
        name: "sim5a",
        description: "immobile I, d_S=1, beta=0.5+sqrt(x), gamma=1, m=m0, a=1",
        build: || {
            let beta = Expr::SqrtAffine { k: 0.5, c: 1.0 };
            di("sim5a", beta, Expr::Constant(1.0), M0, 1.0)
        },
    },
    Builtin {
        name: "sim5b",
        description: "immobile I, d_S=1, beta=1.5-sqrt(x), gamma=1, m=m0, a=1: persists near x=0",
        build: || {
            let beta = Expr::SqrtAffine { k: 1.5, c: -1.0 };
            di("sim5b", beta, Expr::Constant(1.0), M0, 1.0)
        },
    },
    Builtin {
        name: "sim5c",
        description: "immobile I, d_S=1, beta=1.5-sqrt(x), gamma=1, m=m0, a=0.5: extinction",
        build: || {
            let beta = Expr::SqrtAffine { k: 1.5, c: -1.0 };
            di("sim5c", beta, Expr::Constant(1.0), M0, 0.5)
        },
    },
];

pub fn builtin(name: &str) -> Option<Scenario> {
    BUILTINS
        .iter()
        .find(|b| b.name == name)
        .map(|b| (b.build)())
}
