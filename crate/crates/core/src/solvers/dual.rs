//! Dual-space gradient iterations `ξ_{n+1} = ξ_n - α_n g_n + β_n m_n`,
//! `x_{n+1} = ∇R*(ξ_{n+1})`.

use std::time::Instant;

use super::record::{IterRow, IterateView, RunRecord, StepInfo, StopReason, Truth};
use super::rules::{gamma_tilde_update, momentum_coefficient, step_size};
use super::{check_dims, resolve_norm_bound, SolverConfig, StepRule};
use crate::error::{Error, Result};
use crate::problem::ForwardProblem;
use crate::regularizers::Regularizer;
use crate::space::GridVector;
use crate::stopping::StoppingRule;

/// Adaptive heavy ball method. With `delta = 0` this is the exact-data
/// iteration: it only stops on a vanishing residual or at `max_iter`.
pub fn ahb_solve(
    prob: &dyn ForwardProblem,
    reg: &mut dyn Regularizer,
    y_delta: &GridVector,
    delta: f64,
    xi0: &GridVector,
    cfg: &SolverConfig,
    truth: Option<Truth<'_>>,
) -> Result<(GridVector, RunRecord)> {
    run(prob, reg, y_delta, delta, xi0, cfg, truth, true, &mut |_| {})
}

#[allow(clippy::too_many_arguments)]
pub fn ahb_solve_observed(
    prob: &dyn ForwardProblem,
    reg: &mut dyn Regularizer,
    y_delta: &GridVector,
    delta: f64,
    xi0: &GridVector,
    cfg: &SolverConfig,
    truth: Option<Truth<'_>>,
    observer: &mut dyn FnMut(&IterateView<'_>),
) -> Result<(GridVector, RunRecord)> {
    run(prob, reg, y_delta, delta, xi0, cfg, truth, true, observer)
}

/// Landweber-type method: the same iteration with `β_n ≡ 0`.
pub fn landweber_solve(
    prob: &dyn ForwardProblem,
    reg: &mut dyn Regularizer,
    y_delta: &GridVector,
    delta: f64,
    xi0: &GridVector,
    cfg: &SolverConfig,
    truth: Option<Truth<'_>>,
) -> Result<(GridVector, RunRecord)> {
    run(prob, reg, y_delta, delta, xi0, cfg, truth, false, &mut |_| {})
}

#[allow(clippy::too_many_arguments)]
pub fn landweber_solve_observed(
    prob: &dyn ForwardProblem,
    reg: &mut dyn Regularizer,
    y_delta: &GridVector,
    delta: f64,
    xi0: &GridVector,
    cfg: &SolverConfig,
    truth: Option<Truth<'_>>,
    observer: &mut dyn FnMut(&IterateView<'_>),
) -> Result<(GridVector, RunRecord)> {
    run(prob, reg, y_delta, delta, xi0, cfg, truth, false, observer)
}

#[allow(clippy::too_many_arguments)]
fn run(
    prob: &dyn ForwardProblem,
    reg: &mut dyn Regularizer,
    y_delta: &GridVector,
    delta: f64,
    xi0: &GridVector,
    cfg: &SolverConfig,
    truth: Option<Truth<'_>>,
    momentum: bool,
    observer: &mut dyn FnMut(&IterateView<'_>),
) -> Result<(GridVector, RunRecord)> {
    check_dims(prob, y_delta, Some(xi0))?;
    let sigma = reg.sigma();
    let warnings = cfg.validate(sigma)?;
    for w in &warnings {
        log::debug!("{}: {w}", prob.name());
    }
    let rule = StoppingRule::new(cfg.tau, delta, cfg.max_iter)?;
    let method = if momentum { "ahb" } else { "landweber" };
    let mut record = RunRecord::new(method);
    record.warnings = warnings;

    let mut xi = xi0.clone();
    let mut xi_prev = xi0.clone();
    let mut x = reg.conj_grad(&xi);
    if !prob.domain_check(&x) {
        return Err(Error::OutsideDomain("initial iterate".into()));
    }
    let mut x_prev = x.clone();
    let norm_bound = match cfg.step_rule {
        StepRule::Constant => Some(resolve_norm_bound(prob, &x, cfg.norm_bound)?),
        StepRule::Adaptive => None,
    };
    let truth = truth.filter(|_| cfg.record_truth_error);

    let start = Instant::now();
    let mut gamma_tilde = 0.0;
    let mut alpha_prev = 0.0;
    let mut beta_prev = 0.0;
    let mut r_prev_norm = 0.0;
    let mut stalled = false;

    for n in 0.. {
        let fx = match prob.apply(&x) {
            Ok(v) => v,
            Err(e) => {
                record.diagnostic = Some(format!("forward evaluation failed at n = {n}: {e}"));
                record.finish(StopReason::Aborted, n, start.elapsed().as_secs_f64());
                break;
            }
        };
        record.forward_evals += 1;
        let r = fx.sub(y_delta);
        let r_norm = r.norm();
        let truth_error = truth.map(|t| t.error(&x));

        let terminal = if rule.satisfied(r_norm) {
            Some(if delta > 0.0 {
                StopReason::Discrepancy
            } else {
                StopReason::ExactZeroResidual
            })
        } else if stalled {
            record.diagnostic =
                Some("gradient vanished with nonzero residual; iteration cannot progress".into());
            Some(StopReason::Stalled)
        } else if n >= cfg.max_iter {
            Some(StopReason::MaxIter)
        } else {
            None
        };
        if let Some(reason) = terminal {
            observer(&IterateView {
                n,
                xi: &xi,
                xi_prev: &xi_prev,
                x: &x,
                x_prev: &x_prev,
                residual_norm: r_norm,
                step: None,
            });
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

        let g = match prob.lin_adjoint(&x, &r) {
            Ok(v) => v,
            Err(e) => {
                record.diagnostic = Some(format!("adjoint evaluation failed at n = {n}: {e}"));
                record.finish(StopReason::Aborted, n, start.elapsed().as_secs_f64());
                break;
            }
        };
        record.adjoint_evals += 1;
        let alpha = step_size(&r, &g, cfg, norm_bound)?;
        if cfg.step_rule == StepRule::Adaptive && g.norm_sq() == 0.0 {
            stalled = true;
        }

        let (beta, m) = if momentum {
            let m = xi.sub(&xi_prev);
            if n > 0 {
                gamma_tilde = gamma_tilde_update(
                    &m,
                    &x,
                    &x_prev,
                    alpha_prev,
                    r_prev_norm,
                    beta_prev,
                    gamma_tilde,
                    cfg.eta,
                    delta,
                );
            }
            let beta = momentum_coefficient(alpha, &g, &m, gamma_tilde, sigma, cfg.beta_cap);
            (beta, Some(m))
        } else {
            (0.0, None)
        };

        observer(&IterateView {
            n,
            xi: &xi,
            xi_prev: &xi_prev,
            x: &x,
            x_prev: &x_prev,
            residual_norm: r_norm,
            step: Some(StepInfo { alpha, beta, gamma_tilde }),
        });
        record.rows.push(IterRow {
            n,
            residual_norm: r_norm,
            alpha: Some(alpha),
            beta: momentum.then_some(beta),
            gamma_tilde: momentum.then_some(gamma_tilde),
            truth_error,
            elapsed: start.elapsed().as_secs_f64(),
        });

        let mut xi_next = xi.clone();
        xi_next.axpy(-alpha, &g);
        if beta != 0.0 {
            if let Some(m) = &m {
                xi_next.axpy(beta, m);
            }
        }
        let x_next = reg.conj_grad(&xi_next);
        if !prob.domain_check(&x_next) {
            record.diagnostic = Some(format!("iterate {} left the problem domain", n + 1));
            record.finish(StopReason::Aborted, n, start.elapsed().as_secs_f64());
            break;
        }

        xi_prev = std::mem::replace(&mut xi, xi_next);
        x_prev = std::mem::replace(&mut x, x_next);
        alpha_prev = alpha;
        beta_prev = beta;
        r_prev_norm = r_norm;
    }

    Ok((x, record))
}
