//! Built-in test problems.

mod banded;
mod elliptic;
mod fredholm;
mod phantom;
mod sparse;
mod tomo;

pub use banded::BandedCholesky;
pub use elliptic::{build_elliptic, default_inclusions, EllipticProblem, EllipticSetup};
pub use fredholm::{build_fredholm, fredholm_kernel, fredholm_truth, FredholmProblem, FredholmSetup};
pub use phantom::{shepp_logan, Ellipse, MODIFIED_SHEPP_LOGAN};
pub use sparse::CsrMatrix;
pub use tomo::{build_tomo, Geometry, TomoProblem};

use crate::error::Result;
use crate::noise::{gaussian_like, rng};
use crate::problem::ForwardProblem;
use crate::space::GridVector;

/// Largest normalized adjoint mismatch
/// `|⟨L(x)h, w⟩ - ⟨h, L(x)*w⟩| / (1 + ‖h‖‖w‖)` over random Gaussian pairs.
pub fn adjoint_mismatch(
    prob: &dyn ForwardProblem,
    x: &GridVector,
    pairs: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = rng(seed);
    let data = prob.data_zeros();
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let h = gaussian_like(x, &mut rng);
        let w = gaussian_like(&data, &mut rng);
        let lhs = prob.lin_apply(x, &h)?.inner(&w);
        let rhs = h.inner(&prob.lin_adjoint(x, &w)?);
        worst = worst.max((lhs - rhs).abs() / (1.0 + h.norm() * w.norm()));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorReport {
    /// `‖F(x+εh) - F(x) - εL(x)h‖` at ε.
    pub remainder: f64,
    /// Same at ε/2.
    pub remainder_half: f64,
    pub ratio: f64,
    pub passed: bool,
}

/// First-order Taylor remainder test: the remainder must shrink by a factor
/// in `[3.5, 4.5]` when ε is halved. A direction with exactly zero remainder
/// at both scales passes trivially.
pub fn taylor_remainder_check(
    prob: &dyn ForwardProblem,
    x: &GridVector,
    h: &GridVector,
    eps: f64,
) -> Result<TaylorReport> {
    let fx = prob.apply(x)?;
    let lh = prob.lin_apply(x, h)?;
    let remainder_at = |e: f64| -> Result<f64> {
        let mut xe = x.clone();
        xe.axpy(e, h);
        let mut d = prob.apply(&xe)?.sub(&fx);
        d.axpy(-e, &lh);
        Ok(d.norm())
    };
    let remainder = remainder_at(eps)?;
    let remainder_half = remainder_at(eps / 2.0)?;
    let (ratio, passed) = if remainder == 0.0 && remainder_half == 0.0 {
        (f64::NAN, true)
    } else {
        let ratio = remainder / remainder_half;
        (ratio, (3.5..=4.5).contains(&ratio))
    };
    Ok(TaylorReport { remainder, remainder_half, ratio, passed })
}
