use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Discrepancy principle: stop at the first `n` with `‖r_n‖ ≤ τ δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule {
    pub tau: f64,
    pub delta: f64,
    pub max_iter: usize,
}

impl StoppingRule {
    pub fn new(tau: f64, delta: f64, max_iter: usize) -> Result<Self> {
        if !(tau > 1.0) {
            return Err(Error::Config(format!("tau must exceed 1, got {tau}")));
        }
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(Error::Config(format!("delta must be >= 0, got {delta}")));
        }
        if max_iter == 0 {
            return Err(Error::Config("max_iter must be positive".into()));
        }
        Ok(Self { tau, delta, max_iter })
    }

    pub fn threshold(&self) -> f64 {
        self.tau * self.delta
    }

    pub fn satisfied(&self, residual_norm: f64) -> bool {
        residual_norm <= self.threshold()
    }
}
