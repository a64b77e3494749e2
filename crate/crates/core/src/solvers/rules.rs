use super::{SolverConfig, StepRule};
use crate::error::{Error, Result};
use crate::space::GridVector;

/// Step size for residual `r` and gradient `g = L(x)* r`.
///
/// Under the adaptive rule a zero residual gives `α = 0` (exact-data
/// convention) and a zero gradient with nonzero residual gives `μ₁`.
pub fn step_size(
    r: &GridVector,
    g: &GridVector,
    cfg: &SolverConfig,
    norm_bound: Option<f64>,
) -> Result<f64> {
    match cfg.step_rule {
        StepRule::Constant => match norm_bound {
            Some(l) if l > 0.0 => Ok(cfg.mu0 / (l * l)),
            other => Err(Error::Config(format!(
                "constant step rule needs a positive norm bound, got {other:?}"
            ))),
        },
        StepRule::Adaptive => {
            let rr = r.norm_sq();
            if rr == 0.0 {
                return Ok(0.0);
            }
            let gg = g.norm_sq();
            if gg == 0.0 {
                return Ok(cfg.mu1);
            }
            Ok((cfg.mu0 * rr / gg).min(cfg.mu1))
        }
    }
}

/// Computable surrogate for `⟨m_n, x_n - x̂⟩`:
///
/// `γ̃_n = ⟨m_n, x_n - x_{n-1}⟩ - (1-η)α_{n-1}‖r_{n-1}‖² + (1+η)α_{n-1}δ‖r_{n-1}‖ + β_{n-1}γ̃_{n-1}`
///
/// for `n ≥ 1`; the caller sets `γ̃₀ = 0`.
#[allow(clippy::too_many_arguments)]
pub fn gamma_tilde_update(
    m: &GridVector,
    x_cur: &GridVector,
    x_prev: &GridVector,
    alpha_prev: f64,
    r_prev_norm: f64,
    beta_prev: f64,
    gamma_prev: f64,
    eta: f64,
    delta: f64,
) -> f64 {
    let dx = x_cur.sub(x_prev);
    m.inner(&dx) - (1.0 - eta) * alpha_prev * r_prev_norm * r_prev_norm
        + (1.0 + eta) * alpha_prev * delta * r_prev_norm
        + beta_prev * gamma_prev
}

/// `β = min{max{0, (α⟨g,m⟩ - 2σγ̃)/‖m‖²}, β̄}`, and `0` when `m = 0`.
pub fn momentum_coefficient(
    alpha: f64,
    g: &GridVector,
    m: &GridVector,
    gamma_tilde: f64,
    sigma: f64,
    beta_cap: f64,
) -> f64 {
    let mm = m.norm_sq();
    if mm == 0.0 {
        return 0.0;
    }
    let raw = (alpha * g.inner(m) - 2.0 * sigma * gamma_tilde) / mm;
    raw.max(0.0).min(beta_cap)
}
