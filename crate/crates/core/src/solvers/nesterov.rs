use std::time::Instant;

use super::record::{IterRow, RunRecord, StopReason, Truth};
use crate::error::{Error, Result};
use crate::problem::ForwardProblem;
use crate::space::GridVector;
use crate::stopping::{StoppingRule, DEFAULT_MAX_ITER};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NesterovConfig {
    /// Extrapolation shift α ≥ 2 in `(n-1)/(n+α)`.
    pub alpha_shift: f64,
    pub gamma: f64,
    pub tau: f64,
    pub max_iter: usize,
}

impl NesterovConfig {
    pub fn new(alpha_shift: f64, gamma: f64, tau: f64) -> Self {
        Self { alpha_shift, gamma, tau, max_iter: DEFAULT_MAX_ITER }
    }
}

/// Nesterov-accelerated Landweber iteration from `x₋₁ = x₀ = 0`:
///
/// `z_n = x_n + (n-1)/(n+α) (x_n - x_{n-1})`, `x_{n+1} = z_n - γ A*(A z_n - y^δ)`.
///
/// The discrepancy principle is checked on `A x_n - y^δ`, which costs a second
/// forward application per step.
pub fn nesterov_solve(
    prob: &dyn ForwardProblem,
    y_delta: &GridVector,
    delta: f64,
    cfg: &NesterovConfig,
    truth: Option<Truth<'_>>,
) -> Result<(GridVector, RunRecord)> {
    if !prob.is_linear() {
        return Err(Error::Unsupported(format!(
            "nesterov requires a linear problem, {} is nonlinear",
            prob.name()
        )));
    }
    if !(cfg.alpha_shift >= 2.0) {
        return Err(Error::Config(format!("alpha_shift must be >= 2, got {}", cfg.alpha_shift)));
    }
    if !(cfg.gamma > 0.0) {
        return Err(Error::Config(format!("gamma must be positive, got {}", cfg.gamma)));
    }
    super::check_dims(prob, y_delta, None)?;
    let rule = StoppingRule::new(cfg.tau, delta, cfg.max_iter)?;
    let mut record = RunRecord::new("nesterov");

    let mut x = prob.param_zeros();
    let mut x_prev = x.clone();
    let start = Instant::now();
    for n in 0.. {
        let r_norm = prob.apply(&x)?.sub(y_delta).norm();
        record.forward_evals += 1;
        let truth_error = truth.map(|t| t.error(&x));
        let terminal = if rule.satisfied(r_norm) {
            Some(if delta > 0.0 { StopReason::Discrepancy } else { StopReason::ExactZeroResidual })
        } else if n >= cfg.max_iter {
            Some(StopReason::MaxIter)
        } else {
            None
        };
        if let Some(reason) = terminal {
            record.rows.push(IterRow {
                n,
                residual_norm: r_norm,
                alpha: None,
                beta: None,
                gamma_tilde: None,
                truth_error,
                elapsed: start.elapsed().as_secs_f64(),
            });
            record.finish(reason, n, start.elapsed().as_secs_f64());
            break;
        }
        let weight = (n as f64 - 1.0) / (n as f64 + cfg.alpha_shift);
        let mut z = x.clone();
        if weight != 0.0 {
            z.axpy(weight, &x);
            z.axpy(-weight, &x_prev);
        }
        let rz = prob.apply(&z)?.sub(y_delta);
        record.forward_evals += 1;
        let g = prob.lin_adjoint(&z, &rz)?;
        record.adjoint_evals += 1;
        record.rows.push(IterRow {
            n,
            residual_norm: r_norm,
            alpha: Some(cfg.gamma),
            beta: Some(weight),
            gamma_tilde: None,
            truth_error,
            elapsed: start.elapsed().as_secs_f64(),
        });
        z.axpy(-cfg.gamma, &g);
        x_prev = std::mem::replace(&mut x, z);
    }
    Ok((x, record))
}
