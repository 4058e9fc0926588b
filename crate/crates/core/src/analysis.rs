//! Closed-form long-time predictions and trajectory diagnostics.
//!
//! Every integral is the midpoint quadrature of the owning [`Grid`]. Functions that
//! need the whole habitat to be high-risk (`beta > gamma` in every cell) return
//! [`Error::DomainAssumption`] otherwise.

use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::field::Coefficients;
use crate::grid::Grid;
use crate::state::EpidemicState;

/// Residual target of the S* bisection.
pub const SSTAR_TOL: f64 = 1e-12;
const SSTAR_MAX_ITER: usize = 200;

fn require_all_high(coef: &Coefficients, what: &str) -> Result<()> {
    let (b, g) = (coef.beta.values(), coef.gamma.values());
    match (0..coef.n_cells()).find(|&k| !(b[k] > g[k])) {
        Some(k) => Err(Error::DomainAssumption(format!(
            "{what} needs beta > gamma everywhere; cell {k} has beta={} gamma={}",
            b[k], g[k]
        ))),
        None => Ok(()),
    }
}

/// Pointwise `m gamma / (beta - gamma)`.
fn saturation_profile(coef: &Coefficients) -> Vec<f64> {
    let (b, g, m) = (coef.beta.values(), coef.gamma.values(), coef.m.values());
    (0..coef.n_cells())
        .map(|k| m[k] * g[k] / (b[k] - g[k]))
        .collect()
}

/// `∫ m gamma / (beta - gamma)`: at or below this total population the infection
/// dies out when susceptibles are immobile.
pub fn high_risk_threshold(coef: &Coefficients, grid: &Grid) -> Result<f64> {
    check_len(grid.n_cells(), coef.n_cells())?;
    require_all_high(coef, "the saturation threshold")?;
    Ok(grid.integrate(&saturation_profile(coef)))
}

/// Endemic equilibrium of the immobile-susceptible model.
#[derive(Debug, Clone, Serialize)]
pub struct EndemicPredictionDs {
    /// `None` when the total population does not exceed the threshold.
    pub s_tilde: Option<Vec<f64>>,
    /// Spatially constant infected level; zero when infeasible.
    pub i_tilde: f64,
    pub threshold: f64,
    pub feasible: bool,
}

pub fn endemic_limit_ds(
    coef: &Coefficients,
    grid: &Grid,
    n_total: f64,
) -> Result<EndemicPredictionDs> {
    let threshold = high_risk_threshold(coef, grid)?;
    if !(n_total > 0.0) {
        return Err(Error::Config(format!(
            "total population must be positive, got {n_total}"
        )));
    }
    let (b, g, m) = (coef.beta.values(), coef.gamma.values(), coef.m.values());
    let n = coef.n_cells();
    let weight: Vec<f64> = (0..n).map(|k| b[k] / (b[k] - g[k])).collect();
    let feasible = n_total > threshold;
    if !feasible {
        return Ok(EndemicPredictionDs {
            s_tilde: None,
            i_tilde: 0.0,
            threshold,
            feasible,
        });
    }
    let i_tilde = (n_total - threshold) / grid.integrate(&weight);
    let s_tilde = (0..n)
        .map(|k| g[k] / (b[k] - g[k]) * (i_tilde + m[k]))
        .collect();
    Ok(EndemicPredictionDs {
        s_tilde: Some(s_tilde),
        i_tilde,
        threshold,
        feasible,
    })
}

/// Which sufficient condition for endemic convergence the initial data meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PersistenceCondition {
    /// `S0 >= m gamma / (beta - gamma)` everywhere.
    CondI,
    /// `S0 <= m gamma / (beta - gamma)` everywhere and `max I0` below the level bound.
    CondII,
    None,
}

pub fn persistence_conditions_ds(
    s0: &[f64],
    i0: &[f64],
    coef: &Coefficients,
    grid: &Grid,
    n_total: f64,
) -> Result<PersistenceCondition> {
    check_len(coef.n_cells(), s0.len())?;
    check_len(coef.n_cells(), i0.len())?;
    let threshold = high_risk_threshold(coef, grid)?;
    if !(n_total > threshold) {
        return Err(Error::DomainAssumption(format!(
            "persistence conditions need N > {threshold}, got N = {n_total}"
        )));
    }
    let profile = saturation_profile(coef);
    if s0.iter().zip(&profile).all(|(s, p)| s >= p) {
        return Ok(PersistenceCondition::CondI);
    }
    let (b, g) = (coef.beta.values(), coef.gamma.values());
    let recip: Vec<f64> = (0..coef.n_cells()).map(|k| g[k] / (b[k] - g[k])).collect();
    let level = (n_total - threshold) / grid.integrate(&recip);
    let max_i0 = i0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if s0.iter().zip(&profile).all(|(s, p)| s <= p) && max_i0 < level {
        return Ok(PersistenceCondition::CondII);
    }
    Ok(PersistenceCondition::None)
}

/// Hypotheses for the immobile-infected model on an all-high-risk habitat, each
/// evaluated separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiConditions {
    /// `|Ω| m γ/(β-γ) < min{N, N + ∫_supp m - N/|Ω| ∫_supp (β-γ)/γ}` everywhere.
    pub persistence_first: bool,
    /// `m γ/(β-γ) (|Ω| + ∫_supp (β-γ)/γ) < N` everywhere.
    pub persistence_second: bool,
    /// `|Ω| m γ/(β-γ) >= N` everywhere: extinction with `S -> N/|Ω|`.
    pub extinction: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EndemicPredictionDi {
    pub s_hat: f64,
    /// `((β-γ)/γ Ŝ - m)` on the support, zero off it.
    pub i_hat: Vec<f64>,
    pub conditions: DiConditions,
}

pub fn endemic_limit_di(
    coef: &Coefficients,
    grid: &Grid,
    n_total: f64,
    support: &[bool],
) -> Result<EndemicPredictionDi> {
    check_len(grid.n_cells(), coef.n_cells())?;
    check_len(coef.n_cells(), support.len())?;
    require_all_high(coef, "the immobile-infected endemic limit")?;
    let (b, g, m) = (coef.beta.values(), coef.gamma.values(), coef.m.values());
    let n = coef.n_cells();
    let area = grid.measure();
    let rel_excess: Vec<f64> = (0..n).map(|k| (b[k] - g[k]) / g[k]).collect();
    let m_supp = grid.integrate_masked(m, support);
    let excess_supp = grid.integrate_masked(&rel_excess, support);

    let s_hat = (n_total + m_supp) / (area + excess_supp);
    let i_hat = (0..n)
        .map(|k| {
            if support[k] {
                rel_excess[k] * s_hat - m[k]
            } else {
                0.0
            }
        })
        .collect();

    let profile = saturation_profile(coef);
    let bound_first = n_total.min(n_total + m_supp - n_total / area * excess_supp);
    let conditions = DiConditions {
        persistence_first: profile.iter().all(|p| area * p < bound_first),
        persistence_second: profile.iter().all(|p| p * (area + excess_supp) < n_total),
        extinction: profile.iter().all(|p| area * p >= n_total),
    };
    Ok(EndemicPredictionDi {
        s_hat,
        i_hat,
        conditions,
    })
}

/// Root of `|Ω| τ + ∫ ((R-1) τ - m)_+ χ = N` and the matching infected limit.
#[derive(Debug, Clone, Serialize)]
pub struct SStarSolution {
    pub s_star: f64,
    /// `((R-1) S* - m)_+` on the support.
    pub i_limit: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// `∫ (R-1)_+ χ`, which must stay below `|Ω|` for the S* characterisation.
pub fn positive_excess_ratio(coef: &Coefficients, grid: &Grid, support: &[bool]) -> f64 {
    let (b, g) = (coef.beta.values(), coef.gamma.values());
    let vals: Vec<f64> = (0..coef.n_cells())
        .map(|k| (b[k] / g[k] - 1.0).max(0.0))
        .collect();
    grid.integrate_masked(&vals, support)
}

/// `f(τ) = |Ω| τ + ∫ ((R-1) τ - m)_+ χ - N`.
pub fn sstar_objective(
    coef: &Coefficients,
    grid: &Grid,
    n_total: f64,
    support: &[bool],
    tau: f64,
) -> f64 {
    let (b, g, m) = (coef.beta.values(), coef.gamma.values(), coef.m.values());
    let active: f64 = (0..coef.n_cells())
        .filter(|&k| support[k])
        .map(|k| ((b[k] / g[k] - 1.0) * tau - m[k]).max(0.0))
        .sum();
    grid.measure() * tau + grid.h() * active - n_total
}

pub fn solve_sstar(
    coef: &Coefficients,
    grid: &Grid,
    n_total: f64,
    support: &[bool],
) -> Result<SStarSolution> {
    check_len(grid.n_cells(), coef.n_cells())?;
    check_len(coef.n_cells(), support.len())?;
    if !(n_total > 0.0) || !n_total.is_finite() {
        return Err(Error::Config(format!(
            "total population must be positive, got {n_total}"
        )));
    }
    let area = grid.measure();
    let ratio = positive_excess_ratio(coef, grid, support);
    if !(area > ratio) {
        return Err(Error::Monotonicity(format!(
            "need |Ω| > ∫(R-1)_+ on the infected support, got {area} <= {ratio}"
        )));
    }
    let f = |tau: f64| sstar_objective(coef, grid, n_total, support, tau);

    let (mut lo, mut hi) = (0.0, n_total / area);
    let mut s_star = hi;
    let mut iterations = 0;
    if f(hi) > SSTAR_TOL {
        loop {
            iterations += 1;
            let mid = 0.5 * (lo + hi);
            let val = f(mid);
            s_star = mid;
            if val.abs() <= SSTAR_TOL || hi - lo <= f64::EPSILON * hi {
                break;
            }
            if val > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            if iterations >= SSTAR_MAX_ITER {
                return Err(Error::Numerical(format!(
                    "S* bisection did not converge in {SSTAR_MAX_ITER} iterations"
                )));
            }
        }
    }
    let residual = f(s_star).abs();
    let (b, g, m) = (coef.beta.values(), coef.gamma.values(), coef.m.values());
    let i_limit = (0..coef.n_cells())
        .map(|k| {
            if support[k] {
                ((b[k] / g[k] - 1.0) * s_star - m[k]).max(0.0)
            } else {
                0.0
            }
        })
        .collect();
    Ok(SStarSolution {
        s_star,
        i_limit,
        residual,
        iterations,
    })
}

/// Pointwise limits of the movement-free system with local population `n`.
#[derive(Debug, Clone, Serialize)]
pub struct OdeLimit {
    pub r0: Vec<f64>,
    pub s_inf: Vec<f64>,
    pub i_inf: Vec<f64>,
}

/// `R0 = β n / (γ (m + n))`, taken as zero where `m + n = 0`.
pub fn local_r0(beta: f64, gamma: f64, m: f64, n: f64) -> f64 {
    let denom = gamma * (m + n);
    if denom > 0.0 {
        beta * n / denom
    } else {
        0.0
    }
}

pub fn ode_pointwise_limit(coef: &Coefficients, n_profile: &[f64]) -> Result<OdeLimit> {
    check_len(coef.n_cells(), n_profile.len())?;
    if let Some(k) = n_profile.iter().position(|&v| !(v >= 0.0)) {
        return Err(Error::Invariant(format!(
            "negative local population in cell {k}"
        )));
    }
    let (b, g, m) = (coef.beta.values(), coef.gamma.values(), coef.m.values());
    let r0: Vec<f64> = (0..coef.n_cells())
        .map(|k| local_r0(b[k], g[k], m[k], n_profile[k]))
        .collect();
    let (s_inf, i_inf) = r0
        .iter()
        .zip(n_profile)
        .map(|(&r, &n)| {
            if r <= 1.0 {
                (n, 0.0)
            } else {
                (n / r, (1.0 - 1.0 / r) * n)
            }
        })
        .unzip();
    Ok(OdeLimit { r0, s_inf, i_inf })
}

/// `max I / min I`; infinite when some cell has no infection.
pub fn harnack_ratio(i: &[f64]) -> f64 {
    let min = i.iter().copied().fold(f64::INFINITY, f64::min);
    let max = i.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// `∫ γ U² / (2(β-γ)) + ½ ∫ I²` with `U = (β-γ)/γ S - m`; non-increasing along
/// immobile-susceptible trajectories on an all-high-risk habitat.
pub fn lyapunov_ds(state: &EpidemicState, coef: &Coefficients, grid: &Grid) -> Result<f64> {
    check_len(grid.n_cells(), state.n_cells())?;
    check_len(coef.n_cells(), state.n_cells())?;
    require_all_high(coef, "the immobile-susceptible Lyapunov function")?;
    let (b, g, m) = (coef.beta.values(), coef.gamma.values(), coef.m.values());
    let sum: f64 = (0..state.n_cells())
        .map(|k| {
            let excess = b[k] - g[k];
            let u = excess / g[k] * state.s[k] - m[k];
            g[k] * u * u / (2.0 * excess) + 0.5 * state.i[k] * state.i[k]
        })
        .sum();
    Ok(grid.h() * sum)
}

/// `½ ∫ S² + ∫_{H+ ∩ supp} γ (I+m)² / (2(β-γ))`, with H+ the cells where
/// `β - γ > tol_risk`.
pub fn lyapunov_di(
    state: &EpidemicState,
    coef: &Coefficients,
    grid: &Grid,
    support: &[bool],
    tol_risk: f64,
) -> Result<f64> {
    check_len(grid.n_cells(), state.n_cells())?;
    check_len(coef.n_cells(), state.n_cells())?;
    check_len(coef.n_cells(), support.len())?;
    let (b, g, m) = (coef.beta.values(), coef.gamma.values(), coef.m.values());
    let sum: f64 = (0..state.n_cells())
        .map(|k| {
            let excess = b[k] - g[k];
            let mut v = 0.5 * state.s[k] * state.s[k];
            if support[k] && excess > tol_risk {
                let w = state.i[k] + m[k];
                v += g[k] * w * w / (2.0 * excess);
            }
            v
        })
        .sum();
    Ok(grid.h() * sum)
}

/// Cells counted as initially infected.
pub fn infection_support(i0: &[f64], tol: f64) -> Vec<bool> {
    i0.iter().map(|&v| v > tol).collect()
}
