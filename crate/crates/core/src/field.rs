//! Catalogue of coefficient and initial-data profiles, and their samples on a grid.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::grid::Grid;

/// Closed catalogue of profile shapes, written textually as e.g. `affine(5,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Expr {
    /// `c`
    Constant(f64),
    /// `k + c x`
    Affine { k: f64, c: f64 },
    /// `k + c sqrt(x)`
    SqrtAffine { k: f64, c: f64 },
    /// `max(k1 + c1 x, k2 + c2 x)`
    AffineMax { k1: f64, c1: f64, k2: f64, c2: f64 },
    /// `1 - 2x` on `x < 0.5`, zero elsewhere.
    PaperM0,
    /// `a (c + cos(pi x))`
    ScaledCosine { a: f64, c: f64 },
}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Expr::Constant(c) => c,
            Expr::Affine { k, c } => k + c * x,
            Expr::SqrtAffine { k, c } => k + c * x.sqrt(),
            Expr::AffineMax { k1, c1, k2, c2 } => (k1 + c1 * x).max(k2 + c2 * x),
            Expr::PaperM0 => {
                if x < 0.5 {
                    1.0 - 2.0 * x
                } else {
                    0.0
                }
            }
            Expr::ScaledCosine { a, c } => a * (c + (PI * x).cos()),
        }
    }

    /// Returns the same shape with its additive offset replaced by `k`.
    ///
    /// For `affine_max` both branch offsets move so that their difference is kept.
    pub fn with_offset(&self, k: f64) -> Result<Expr> {
        Ok(match *self {
            Expr::Constant(_) => Expr::Constant(k),
            Expr::Affine { c, .. } => Expr::Affine { k, c },
            Expr::SqrtAffine { c, .. } => Expr::SqrtAffine { k, c },
            Expr::AffineMax { k1, c1, k2, c2 } => Expr::AffineMax {
                k1: k,
                c1,
                k2: k2 - k1 + k,
                c2,
            },
            other => {
                return Err(Error::Config(format!(
                    "expression `{other}` has no offset parameter"
                )))
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(c) => write!(f, "constant({c})"),
            Expr::Affine { k, c } => write!(f, "affine({k},{c})"),
            Expr::SqrtAffine { k, c } => write!(f, "sqrt_affine({k},{c})"),
            Expr::AffineMax { k1, c1, k2, c2 } => write!(f, "affine_max({k1},{c1},{k2},{c2})"),
            Expr::PaperM0 => write!(f, "paper_m0"),
            Expr::ScaledCosine { a, c } => write!(f, "scaled_cosine({a},{c})"),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidCoefficient {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let s_trim = s.trim();
        let (name, args) = match s_trim.find('(') {
            Some(open) => {
                let inner = s_trim[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| bad("missing closing parenthesis"))?;
                let args = inner
                    .split(',')
                    .map(|a| a.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| bad(&format!("bad number: {e}")))?;
                (s_trim[..open].trim(), args)
            }
            None => (s_trim, Vec::new()),
        };
        if args.iter().any(|v| !v.is_finite()) {
            return Err(bad("non-finite parameter"));
        }
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(bad(&format!(
                    "`{name}` takes {n} arguments, got {}",
                    args.len()
                )))
            }
        };
        match name {
            "constant" => arity(1).map(|_| Expr::Constant(args[0])),
            "affine" => arity(2).map(|_| Expr::Affine {
                k: args[0],
                c: args[1],
            }),
            "sqrt_affine" => arity(2).map(|_| Expr::SqrtAffine {
                k: args[0],
                c: args[1],
            }),
            "affine_max" => arity(4).map(|_| Expr::AffineMax {
                k1: args[0],
                c1: args[1],
                k2: args[2],
                c2: args[3],
            }),
            "paper_m0" => arity(0).map(|_| Expr::PaperM0),
            "scaled_cosine" => arity(2).map(|_| Expr::ScaledCosine {
                a: args[0],
                c: args[1],
            }),
            _ => Err(bad("unknown expression")),
        }
    }
}

impl TryFrom<String> for Expr {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Expr> for String {
    fn from(e: Expr) -> String {
        e.to_string()
    }
}

/// What a sampled profile is used for; decides the sign check applied on sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldRole {
    /// Transmission or recovery rate, strictly positive.
    Rate,
    /// Saturation coefficient `m`, nonnegative.
    Saturation,
    /// Initial density, nonnegative.
    Density,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientField {
    values: Vec<f64>,
    spec: Option<Expr>,
}

impl CoefficientField {
    /// Wraps raw cell values (no catalogue descriptor).
    pub fn from_values(values: Vec<f64>) -> Self {
        Self { values, spec: None }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spec(&self) -> Option<Expr> {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn check_role(&self, role: FieldRole) -> Result<()> {
        let label = self
            .spec
            .map(|s| s.to_string())
            .unwrap_or_else(|| "<values>".into());
        for (i, &v) in self.values.iter().enumerate() {
            let ok = match role {
                FieldRole::Rate => v > 0.0,
                FieldRole::Saturation | FieldRole::Density => v >= 0.0,
            };
            if !ok || !v.is_finite() {
                let need = if role == FieldRole::Rate {
                    "> 0"
                } else {
                    ">= 0"
                };
                return Err(Error::InvalidCoefficient {
                    spec: label,
                    reason: format!("value {v} in cell {i}, must be {need}"),
                });
            }
        }
        Ok(())
    }
}

/// Evaluates `spec` at every cell center and enforces the sign requirement of `role`.
pub fn sample_field(spec: Expr, grid: &Grid, role: FieldRole) -> Result<CoefficientField> {
    let field = CoefficientField {
        values: grid.centers().iter().map(|&x| spec.eval(x)).collect(),
        spec: Some(spec),
    };
    field.check_role(role)?;
    Ok(field)
}

/// Transmission rate, recovery rate and saturation sampled on one grid.
#[derive(Debug, Clone)]
pub struct Coefficients {
    pub beta: CoefficientField,
    pub gamma: CoefficientField,
    pub m: CoefficientField,
}

impl Coefficients {
    pub fn new(
        beta: CoefficientField,
        gamma: CoefficientField,
        m: CoefficientField,
    ) -> Result<Self> {
        check_len(beta.len(), gamma.len())?;
        check_len(beta.len(), m.len())?;
        beta.check_role(FieldRole::Rate)?;
        gamma.check_role(FieldRole::Rate)?;
        m.check_role(FieldRole::Saturation)?;
        Ok(Self { beta, gamma, m })
    }

    pub fn sample(beta: Expr, gamma: Expr, m: Expr, grid: &Grid) -> Result<Self> {
        Ok(Self {
            beta: sample_field(beta, grid, FieldRole::Rate)?,
            gamma: sample_field(gamma, grid, FieldRole::Rate)?,
            m: sample_field(m, grid, FieldRole::Saturation)?,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.beta.len()
    }

    /// `beta - gamma` per cell.
    pub fn excess(&self) -> Vec<f64> {
        self.beta
            .values()
            .iter()
            .zip(self.gamma.values())
            .map(|(b, g)| b - g)
            .collect()
    }

    /// Largest rate, used for the explicit-reaction step bound.
    pub fn max_rate(&self) -> f64 {
        self.beta.max().max(self.gamma.max())
    }
}
