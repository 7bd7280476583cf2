use crate::error::{Error, Result};

/// Numerical thresholds shared by every floating-point routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Singular value `s_i` counts toward rank iff `s_i > rank_rel_tol * s_1 * max(m, n)`.
    pub rank_rel_tol: f64,
    /// Bound used by residual checks.
    pub residual_tol: f64,
    /// Gram-Schmidt keeps a column iff `|v| > zero_column_tol * max(1, |a_j|)`.
    pub zero_column_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_rel_tol: 1e-12,
            residual_tol: 1e-8,
            zero_column_tol: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_rel_tol: f64, residual_tol: f64, zero_column_tol: f64) -> Result<Self> {
        let cfg = Self {
            rank_rel_tol,
            residual_tol,
            zero_column_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_rel_tol", self.rank_rel_tol),
            ("residual_tol", self.residual_tol),
            ("zero_column_tol", self.zero_column_tol),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}
