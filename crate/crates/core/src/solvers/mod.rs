//! Iterative regularization methods terminated by the discrepancy principle.
//!
//! [`ahb_solve`] is the adaptive heavy ball method; [`landweber_solve`] is the
//! same dual iteration without momentum. [`nu_method_solve`] and
//! [`nesterov_solve`] are baselines restricted to linear operators with the
//! quadratic regularizer.

mod dual;
mod nesterov;
mod nu;
mod record;
mod rules;

pub use dual::{ahb_solve, ahb_solve_observed, landweber_solve, landweber_solve_observed};
pub use nesterov::{nesterov_solve, NesterovConfig};
pub use nu::{nu_method_coefficients, nu_method_solve, NuConfig};
pub use record::{ErrorNorm, IterRow, IterateView, RunRecord, StepInfo, StopReason, Truth};
pub use rules::{gamma_tilde_update, momentum_coefficient, step_size};

use crate::error::{Error, Result};
use crate::norm_estimate::estimate_operator_norm;
use crate::problem::ForwardProblem;
use crate::regularizers::Regularizer;
use crate::space::GridVector;
use crate::stopping::DEFAULT_MAX_ITER;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    /// `α = μ₀ / L²`
    Constant,
    /// `α = min{μ₀‖r‖²/‖g‖², μ₁}`
    Adaptive,
}

/// Parameters shared by the AHB and Landweber-type iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub tau: f64,
    /// Momentum cap β̄; `f64::INFINITY` means uncapped.
    pub beta_cap: f64,
    pub mu0: f64,
    pub mu1: f64,
    pub eta: f64,
    pub step_rule: StepRule,
    pub max_iter: usize,
    pub record_truth_error: bool,
    /// Bound `L ≥ ‖L(x)‖` for the constant rule; estimated when absent and
    /// the problem does not provide one.
    pub norm_bound: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tau: 1.01,
            beta_cap: f64::INFINITY,
            mu0: 1.0,
            mu1: 1.0,
            eta: 0.0,
            step_rule: StepRule::Constant,
            max_iter: DEFAULT_MAX_ITER,
            record_truth_error: true,
            norm_bound: None,
        }
    }
}

impl SolverConfig {
    /// Checks hard constraints; returns soft warnings (e.g. `c₀ ≤ 0`).
    pub fn validate(&self, sigma: f64) -> Result<Vec<String>> {
        if !(self.tau > 1.0) {
            return Err(Error::Config(format!("tau must exceed 1, got {}", self.tau)));
        }
        if !(self.beta_cap >= 0.0) {
            return Err(Error::Config(format!("beta_cap must be >= 0, got {}", self.beta_cap)));
        }
        if !(self.mu0 > 0.0) || !(self.mu1 > 0.0) {
            return Err(Error::Config("mu0 and mu1 must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.eta) {
            return Err(Error::Config(format!("eta must lie in [0, 1), got {}", self.eta)));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be positive".into()));
        }
        if let Some(l) = self.norm_bound {
            if !(l > 0.0) {
                return Err(Error::Config(format!("norm bound must be positive, got {l}")));
            }
        }
        let mut warnings = Vec::new();
        let c0 = self.c0(sigma);
        if c0 <= 0.0 {
            warnings.push(format!(
                "c0 = {c0:.4e} <= 0: monotone descent is not guaranteed for these parameters"
            ));
        }
        if self.beta_cap >= 1.0 {
            warnings.push(format!(
                "beta_cap = {} >= 1: strong convergence theory assumes beta_cap < 1",
                self.beta_cap
            ));
        }
        Ok(warnings)
    }

    /// `c₀ = 1 - (1+η)/τ - η - μ₀/(4σ)`
    pub fn c0(&self, sigma: f64) -> f64 {
        1.0 - (1.0 + self.eta) / self.tau - self.eta - self.mu0 / (4.0 * sigma)
    }

    /// `c₁ = 1 - η - μ₀/(4σ)`, the exact-data counterpart of `c₀`.
    pub fn c1(&self, sigma: f64) -> f64 {
        1.0 - self.eta - self.mu0 / (4.0 * sigma)
    }
}

/// Resolves the constant-rule bound: config override, then the problem's
/// analytic bound, then 200 power iterations at `x`.
pub fn resolve_norm_bound(
    prob: &dyn ForwardProblem,
    x: &GridVector,
    override_bound: Option<f64>,
) -> Result<f64> {
    if let Some(l) = override_bound.or_else(|| prob.norm_bound()) {
        return Ok(l);
    }
    let est = estimate_operator_norm(prob, x, 200, 0x5eed)?;
    log::info!("{}: estimated operator norm {est:.6e}", prob.name());
    Ok(est)
}

/// Data must live in the problem's data space and the start in its
/// parameter space.
pub(crate) fn check_dims(
    prob: &dyn ForwardProblem,
    y_delta: &GridVector,
    start: Option<&GridVector>,
) -> Result<()> {
    let ny = prob.data_zeros().len();
    if y_delta.len() != ny {
        return Err(Error::DimensionMismatch { expected: ny, got: y_delta.len() });
    }
    if let Some(x) = start {
        let nx = prob.param_zeros().len();
        if x.len() != nx {
            return Err(Error::DimensionMismatch { expected: nx, got: x.len() });
        }
    }
    Ok(())
}

/// The ν-method and Nesterov baselines only cover linear problems with the
/// quadratic regularizer.
pub fn check_linear_quadratic(
    method: &str,
    prob: &dyn ForwardProblem,
    reg: &dyn Regularizer,
) -> Result<()> {
    if !prob.is_linear() {
        return Err(Error::Unsupported(format!(
            "{method} requires a linear problem, {} is nonlinear",
            prob.name()
        )));
    }
    if !reg.is_quadratic() {
        return Err(Error::Unsupported(format!(
            "{method} requires the quadratic regularizer, got {}",
            reg.name()
        )));
    }
    Ok(())
}
