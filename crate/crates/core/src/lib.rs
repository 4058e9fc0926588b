//! Simulation and analysis of degenerate SIS reaction-diffusion models with
//! saturated incidence `β S I / (m + S + I)` on an interval.
//!
//! The crate integrates the full model and its three degenerate regimes
//! (immobile susceptibles, immobile infected, no movement) with an IMEX scheme
//! that conserves the total population exactly up to rounding, and computes the
//! closed-form long-time limits those regimes are known to approach.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod discretization;
pub mod eigen;
pub mod error;
pub mod field;
pub mod grid;
pub mod models;
pub mod regions;
pub mod scenario;
pub mod state;

pub use error::{Error, Result};
pub use field::{sample_field, CoefficientField, Coefficients, Expr, FieldRole};
pub use grid::{build_grid, Grid};
pub use models::{
    detect_steady_state, integrate, step, Classification, RunConfig, SteadyStateReport, Trajectory,
};
pub use regions::{classify_regions, RegionMasks};
pub use state::{total_mass, EpidemicState, ModelKind};
