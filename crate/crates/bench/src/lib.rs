//! Shared fixtures for the kernel benchmarks.

use sis_core::{Coefficients, Expr, Grid};

/// Grid and coefficients of the endemic immobile-susceptible experiment.
pub fn fixture(n: usize) -> (Grid, Coefficients) {
    let grid = Grid::new(n, 0.0, 1.0).expect("valid grid");
    let coef = Coefficients::sample(
        Expr::Affine { k: 6.0, c: 1.0 },
        Expr::Affine { k: 5.0, c: 1.0 },
        Expr::PaperM0,
        &grid,
    )
    .expect("valid coefficients");
    (grid, coef)
}
