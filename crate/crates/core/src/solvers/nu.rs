use std::time::Instant;

use super::record::{IterRow, RunRecord, StopReason, Truth};
use crate::error::{Error, Result};
use crate::problem::ForwardProblem;
use crate::space::GridVector;
use crate::stopping::{StoppingRule, DEFAULT_MAX_ITER};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuConfig {
    /// ν > 1/2
    pub nu: f64,
    /// Scaling γ with `0 < γ < 1/‖A‖²`.
    pub gamma: f64,
    pub tau: f64,
    pub max_iter: usize,
}

impl NuConfig {
    pub fn new(nu: f64, gamma: f64, tau: f64) -> Self {
        Self { nu, gamma, tau, max_iter: DEFAULT_MAX_ITER }
    }
}

/// `(α_n, β_n)` of the ν-method, indexed from `n = 0`.
pub fn nu_method_coefficients(n: usize, nu: f64) -> (f64, f64) {
    let n = n as f64;
    let alpha = 4.0 * (2.0 * n + 2.0 * nu + 1.0) * (n + nu)
        / ((n + 2.0 * nu) * (2.0 * n + 4.0 * nu + 1.0));
    let beta = n * (2.0 * n - 1.0) * (2.0 * n + 2.0 * nu + 1.0)
        / ((n + 2.0 * nu) * (2.0 * n + 4.0 * nu + 1.0) * (2.0 * n + 2.0 * nu - 1.0));
    (alpha, beta)
}

/// Brakhage's ν-method from `x₋₁ = x₀ = 0`:
/// `x_{n+1} = x_n - α_n γ A*(A x_n - y^δ) + β_n (x_n - x_{n-1})`.
pub fn nu_method_solve(
    prob: &dyn ForwardProblem,
    y_delta: &GridVector,
    delta: f64,
    cfg: &NuConfig,
    truth: Option<Truth<'_>>,
) -> Result<(GridVector, RunRecord)> {
    if !prob.is_linear() {
        return Err(Error::Unsupported(format!(
            "nu-method requires a linear problem, {} is nonlinear",
            prob.name()
        )));
    }
    if !(cfg.nu > 0.5) {
        return Err(Error::Config(format!("nu must exceed 1/2, got {}", cfg.nu)));
    }
    if !(cfg.gamma > 0.0) {
        return Err(Error::Config(format!("gamma must be positive, got {}", cfg.gamma)));
    }
    super::check_dims(prob, y_delta, None)?;
    let rule = StoppingRule::new(cfg.tau, delta, cfg.max_iter)?;
    let mut record = RunRecord::new("nu");

    let mut x = prob.param_zeros();
    let mut x_prev = x.clone();
    let start = Instant::now();
    for n in 0.. {
        let r = prob.apply(&x)?.sub(y_delta);
        record.forward_evals += 1;
        let r_norm = r.norm();
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
        let g = prob.lin_adjoint(&x, &r)?;
        record.adjoint_evals += 1;
        let (a, b) = nu_method_coefficients(n, cfg.nu);
        record.rows.push(IterRow {
            n,
            residual_norm: r_norm,
            alpha: Some(a * cfg.gamma),
            beta: Some(b),
            gamma_tilde: None,
            truth_error,
            elapsed: start.elapsed().as_secs_f64(),
        });
        let mut next = x.clone();
        next.axpy(-a * cfg.gamma, &g);
        if b != 0.0 {
            next.axpy(b, &x);
            next.axpy(-b, &x_prev);
        }
        x_prev = std::mem::replace(&mut x, next);
    }
    Ok((x, record))
}
