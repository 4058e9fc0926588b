use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::grid::Grid;

/// Susceptible and infected densities at one time instant.
#[derive(Debug, Clone, PartialEq)]
pub struct EpidemicState {
    pub t: f64,
    pub s: Vec<f64>,
    pub i: Vec<f64>,
}

impl EpidemicState {
    pub fn new(t: f64, s: Vec<f64>, i: Vec<f64>) -> Result<Self> {
        check_len(s.len(), i.len())?;
        let state = Self { t, s, i };
        state.check_nonnegative()?;
        Ok(state)
    }

    pub fn n_cells(&self) -> usize {
        self.s.len()
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        for (name, profile) in [("S", &self.s), ("I", &self.i)] {
            if let Some((k, v)) = profile
                .iter()
                .enumerate()
                .find(|(_, v)| !(**v >= 0.0) || !v.is_finite())
            {
                return Err(Error::Invariant(format!(
                    "{name}[{k}] = {v} at t={} is not a finite nonnegative density",
                    self.t
                )));
            }
        }
        Ok(())
    }

    pub fn max_i(&self) -> f64 {
        self.i.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_i(&self) -> f64 {
        self.i.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_s(&self) -> f64 {
        self.s.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `h * sum(S + I)`.
pub fn total_mass(state: &EpidemicState, grid: &Grid) -> Result<f64> {
    check_len(grid.n_cells(), state.s.len())?;
    check_len(grid.n_cells(), state.i.len())?;
    Ok(grid.h()
        * state
            .s
            .iter()
            .zip(&state.i)
            .map(|(s, i)| s + i)
            .sum::<f64>())
}

/// Which compartments move.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelKind {
    Full {
        d_s: f64,
        d_i: f64,
    },
    /// Susceptibles immobile.
    DsZero {
        d_i: f64,
    },
    /// Infected immobile.
    DiZero {
        d_s: f64,
    },
    /// No movement at all: a family of pointwise ODEs.
    Ode,
}

impl ModelKind {
    pub fn d_s(&self) -> f64 {
        match *self {
            ModelKind::Full { d_s, .. } | ModelKind::DiZero { d_s } => d_s,
            _ => 0.0,
        }
    }

    pub fn d_i(&self) -> f64 {
        match *self {
            ModelKind::Full { d_i, .. } | ModelKind::DsZero { d_i } => d_i,
            _ => 0.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Full { .. } => "full",
            ModelKind::DsZero { .. } => "ds_zero",
            ModelKind::DiZero { .. } => "di_zero",
            ModelKind::Ode => "ode",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, d: f64| {
            if d > 0.0 && d.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "{} model needs {name} > 0, got {d}",
                    self.name()
                )))
            }
        };
        match *self {
            ModelKind::Full { d_s, d_i } => {
                positive("d_s", d_s)?;
                positive("d_i", d_i)
            }
            ModelKind::DsZero { d_i } => positive("d_i", d_i),
            ModelKind::DiZero { d_s } => positive("d_s", d_s),
            ModelKind::Ode => Ok(()),
        }
    }
}
