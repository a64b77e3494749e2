//! Strongly convex regularization functionals.

mod gradient;
mod pdhg;
mod quadratic;
mod tv;

pub use gradient::{discrete_divergence, discrete_gradient, tv_value, GradientField, ImageDims};
pub use pdhg::{pdhg_denoise, pdhg_denoise_warm, tv_denoise_objective};
pub use quadratic::QuadraticReg;
pub use tv::TVQuadraticReg;

use crate::space::GridVector;

/// A proper, lower semicontinuous, strongly convex `R: X -> (-∞, ∞]`.
pub trait Regularizer: Send {
    fn name(&self) -> &str;

    /// `R(x)`; may be `+∞` outside the effective domain.
    fn value(&self, x: &GridVector) -> f64;

    /// `∇R*(ξ) = argmin_x { R(x) - ⟨ξ, x⟩ }`.
    ///
    /// Takes `&mut self` because inexact inner solvers keep warm-start state.
    fn conj_grad(&mut self, xi: &GridVector) -> GridVector;

    /// Strong convexity modulus σ.
    fn sigma(&self) -> f64;

    fn is_quadratic(&self) -> bool {
        false
    }

    /// Drop any warm-start state so the next call is history-free.
    fn reset(&mut self) {}
}
