//! Risk (`beta` vs `gamma`) and saturation (`m`) partitions of the habitat.

use serde::Serialize;

use crate::error::{check_len, Result};
use crate::field::Coefficients;

/// Default tolerance for treating `beta == gamma`.
pub const DEFAULT_TOL_RISK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionMasks {
    pub high: Vec<bool>,
    pub moderate: Vec<bool>,
    pub low: Vec<bool>,
    pub m_zero: Vec<bool>,
    pub m_pos: Vec<bool>,
    pub tol_risk: f64,
}

impl RegionMasks {
    pub fn all_high(&self) -> bool {
        self.high.iter().all(|&h| h)
    }

    /// Every cell is high- or moderate-risk and at least one is moderate.
    pub fn high_and_moderate_only(&self) -> bool {
        !self.low.iter().any(|&l| l) && self.moderate.iter().any(|&m| m)
    }

    pub fn no_high(&self) -> bool {
        !self.high.iter().any(|&h| h)
    }

    /// Cells that are high-risk and free of saturation.
    pub fn high_unsaturated(&self) -> Vec<bool> {
        self.high
            .iter()
            .zip(&self.m_zero)
            .map(|(h, z)| *h && *z)
            .collect()
    }
}

/// Classifies every cell; `high` iff `beta - gamma > tol`, `low` iff `< -tol`,
/// `m_zero` iff `m <= tol`.
pub fn classify_regions(coef: &Coefficients, tol_risk: f64) -> Result<RegionMasks> {
    let n = coef.n_cells();
    check_len(n, coef.gamma.len())?;
    check_len(n, coef.m.len())?;
    let excess = coef.excess();
    let high: Vec<bool> = excess.iter().map(|&e| e > tol_risk).collect();
    let low: Vec<bool> = excess.iter().map(|&e| e < -tol_risk).collect();
    let moderate = high.iter().zip(&low).map(|(h, l)| !h && !l).collect();
    let m_zero: Vec<bool> = coef.m.values().iter().map(|&m| m <= tol_risk).collect();
    let m_pos = m_zero.iter().map(|z| !z).collect();
    Ok(RegionMasks {
        high,
        moderate,
        low,
        m_zero,
        m_pos,
        tol_risk,
    })
}

/// Longest run of consecutive set cells, as a half-open range (first one on ties).
pub fn longest_run(mask: &[bool]) -> Option<std::ops::Range<usize>> {
    let mut best: Option<std::ops::Range<usize>> = None;
    let mut start = None;
    for (k, &on) in mask.iter().chain(std::iter::once(&false)).enumerate() {
        match (on, start) {
            (true, None) => start = Some(k),
            (false, Some(s)) => {
                if best.as_ref().is_none_or(|b| k - s > b.len()) {
                    best = Some(s..k);
                }
                start = None;
            }
            _ => {}
        }
    }
    best
}
