//! Principal Dirichlet eigenvalue of `d Δ + V` on a subinterval and the diffusion
//! rate at which it changes sign.
//!
//! The Dirichlet condition sits on the outer cell faces of the sub-grid: the ghost
//! value is the negated boundary cell value, so the matrix ends carry `-3 d / h²`.
//! With this closure the discrete sine modes are exact eigenvectors of the
//! Laplacian part and the eigenvalue converges at second order.

use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::grid::Grid;
use crate::regions::{longest_run, RegionMasks};

const BISECTION_MAX_ITER: usize = 300;
const INVERSE_MAX_ITER: usize = 50;
/// Residual bound for an accepted eigenpair.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct EigenResult {
    pub lambda0: f64,
    /// Positive principal eigenfunction with maximum 1.
    pub eigenfunction: Vec<f64>,
    pub iterations: usize,
    /// `‖Tφ - λφ‖∞ / max(1, ‖T‖∞)` with `‖φ‖∞ = 1`.
    pub residual: f64,
}

/// Symmetric tridiagonal matrix with constant off-diagonal.
struct DirichletMatrix {
    diag: Vec<f64>,
    off: f64,
}

impl DirichletMatrix {
    fn new(sub: &Grid, d: f64, potential: &[f64]) -> Self {
        let n = sub.n_cells();
        let c = d / (sub.h() * sub.h());
        let mut diag: Vec<f64> = potential.iter().map(|v| v - 2.0 * c).collect();
        diag[0] -= c;
        diag[n - 1] -= c;
        Self { diag, off: c }
    }

    fn n(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence / LDLᵀ inertia).
    fn count_below(&self, x: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for k in 0..self.n() {
            if k > 0 {
                q = self.diag[k] - x - off2 / q;
            }
            if q == 0.0 {
                q = -f64::EPSILON * (self.off.abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().fold(f64::INFINITY, |a, d| a.min(d - r));
        let hi = self
            .diag
            .iter()
            .fold(f64::NEG_INFINITY, |a, d| a.max(d + r));
        (lo, hi)
    }

    fn norm_inf(&self) -> f64 {
        let r = 2.0 * self.off.abs();
        self.diag.iter().fold(0.0f64, |a, d| a.max(d.abs() + r))
    }

    fn apply(&self, u: &[f64]) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|k| {
                let mut v = self.diag[k] * u[k];
                if k > 0 {
                    v += self.off * u[k - 1];
                }
                if k + 1 < n {
                    v += self.off * u[k + 1];
                }
                v
            })
            .collect()
    }

    /// Solves `(T - shift) x = rhs` by Thomas elimination.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.n();
        let mut upper = vec![0.0; n];
        let mut x = rhs.to_vec();
        let mut prev = 0.0;
        for k in 0..n {
            let lower = if k > 0 { self.off } else { 0.0 };
            let pivot = self.diag[k] - shift - lower * prev;
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(Error::Numerical(format!(
                    "singular shifted system at row {k}"
                )));
            }
            upper[k] = if k + 1 < n { self.off / pivot } else { 0.0 };
            x[k] = (x[k] - if k > 0 { lower * x[k - 1] } else { 0.0 }) / pivot;
            prev = upper[k];
        }
        for k in (0..n - 1).rev() {
            x[k] -= upper[k] * x[k + 1];
        }
        Ok(x)
    }
}

/// Largest eigenvalue of `d_i Δ_h + diag(potential)` with Dirichlet faces, by Sturm
/// bisection refined by inverse iteration.
pub fn principal_eigenvalue(sub: &Grid, d_i: f64, potential: &[f64]) -> Result<EigenResult> {
    check_len(sub.n_cells(), potential.len())?;
    if sub.n_cells() < 3 {
        return Err(Error::Config(format!(
            "eigenproblem needs at least 3 cells, got {}",
            sub.n_cells()
        )));
    }
    if !(d_i > 0.0) || !d_i.is_finite() {
        return Err(Error::Config(format!("d_I must be positive, got {d_i}")));
    }
    let mat = DirichletMatrix::new(sub, d_i, potential);
    let n = mat.n();
    let (mut lo, mut hi) = mat.gershgorin();
    let scale = lo.abs().max(hi.abs()).max(1.0);
    let mut iterations = 0;
    while hi - lo > 4.0 * f64::EPSILON * scale {
        iterations += 1;
        if iterations > BISECTION_MAX_ITER {
            return Err(Error::Numerical("Sturm bisection did not converge".into()));
        }
        let mid = 0.5 * (lo + hi);
        if mat.count_below(mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    // Shift just above the spectrum keeps T - shift negative definite.
    let shift = hi + 1e-9 * scale;
    let mut phi = vec![1.0; n];
    let mut lambda = hi;
    let mut residual = f64::INFINITY;
    let norm_t = mat.norm_inf().max(1.0);
    for _ in 0..INVERSE_MAX_ITER {
        iterations += 1;
        let next = mat.solve_shifted(shift, &phi)?;
        let norm = next.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let sign = if next.iter().sum::<f64>() < 0.0 {
            -1.0
        } else {
            1.0
        };
        phi = next.iter().map(|v| sign * v / norm).collect();
        let t_phi = mat.apply(&phi);
        let num: f64 = phi.iter().zip(&t_phi).map(|(a, b)| a * b).sum();
        let den: f64 = phi.iter().map(|a| a * a).sum();
        lambda = num / den;
        residual = t_phi
            .iter()
            .zip(&phi)
            .fold(0.0f64, |a, (tp, p)| a.max((tp - lambda * p).abs()))
            / norm_t;
        if residual <= 0.1 * RESIDUAL_TOL {
            break;
        }
    }
    if !(residual <= RESIDUAL_TOL) {
        return Err(Error::Numerical(format!(
            "inverse iteration stalled with residual {residual:e}"
        )));
    }
    if let Some(k) = phi.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::Numerical(format!(
            "principal eigenfunction not positive in cell {k}"
        )));
    }
    Ok(EigenResult {
        lambda0: lambda,
        eigenfunction: phi,
        iterations,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalDiffusion {
    /// Zero when the potential is nowhere positive.
    pub d_critical: f64,
    /// False when `λ0 < 0` for every `d_I > 0`.
    pub sign_change: bool,
}

/// Diffusion rate `d*` with `λ0(d*) = 0`, found by bisection on the decreasing map
/// `d ↦ λ0(d)` until `|λ0| <= tol`.
pub fn critical_diffusion(sub: &Grid, potential: &[f64], tol: f64) -> Result<CriticalDiffusion> {
    check_len(sub.n_cells(), potential.len())?;
    let vmax = potential.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(vmax > 0.0) {
        return Ok(CriticalDiffusion {
            d_critical: 0.0,
            sign_change: false,
        });
    }
    let lambda = |d: f64| principal_eigenvalue(sub, d, potential).map(|r| r.lambda0);
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut expansions = 0;
    while lambda(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::Numerical(
                "could not bracket the critical diffusion".into(),
            ));
        }
    }
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let val = lambda(mid)?;
        if val.abs() <= tol || hi - lo <= f64::EPSILON * hi {
            return Ok(CriticalDiffusion {
                d_critical: mid,
                sign_change: true,
            });
        }
        if val > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Numerical(
        "critical diffusion bisection did not converge".into(),
    ))
}

/// Eigen block of the analysis report.
#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub lambda0: f64,
    pub d_critical: f64,
    pub sign_change: bool,
    pub interval: [f64; 2],
    pub n_cells: usize,
}

/// Longest run of high-risk, saturation-free cells; `None` if it has fewer than 3 cells.
pub fn default_subinterval(
    grid: &Grid,
    masks: &RegionMasks,
) -> Option<(Grid, std::ops::Range<usize>)> {
    let run = longest_run(&masks.high_unsaturated())?;
    if run.len() < 3 {
        return None;
    }
    grid.subgrid(run.clone()).ok().map(|g| (g, run))
}

/// Principal eigenvalue at `d_i` and the critical diffusion on the default subinterval,
/// with potential `beta - gamma`.
pub fn eigen_report(
    grid: &Grid,
    masks: &RegionMasks,
    excess: &[f64],
    d_i: f64,
) -> Result<Option<EigenReport>> {
    check_len(grid.n_cells(), excess.len())?;
    let Some((sub, run)) = default_subinterval(grid, masks) else {
        return Ok(None);
    };
    let potential = &excess[run];
    let eig = principal_eigenvalue(&sub, d_i, potential)?;
    let crit = critical_diffusion(&sub, potential, 1e-10)?;
    Ok(Some(EigenReport {
        lambda0: eig.lambda0,
        d_critical: crit.d_critical,
        sign_change: crit.sign_change,
        interval: [sub.a(), sub.b()],
        n_cells: sub.n_cells(),
    }))
}
