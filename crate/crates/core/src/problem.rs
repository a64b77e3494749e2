use crate::error::Result;
use crate::space::GridVector;

/// A (possibly nonlinear) forward map `F: X -> Y` with a family of
/// linearizations `L(x)` and their adjoints.
///
/// Implementations must be shareable read-only across concurrent runs.
pub trait ForwardProblem: Send + Sync {
    fn name(&self) -> &str;

    /// `F(x)`.
    fn apply(&self, x: &GridVector) -> Result<GridVector>;

    /// `L(x) h`.
    fn lin_apply(&self, x: &GridVector, h: &GridVector) -> Result<GridVector>;

    /// `L(x)* w`, adjoint with respect to the weighted inner products of X and Y.
    fn lin_adjoint(&self, x: &GridVector, w: &GridVector) -> Result<GridVector>;

    fn domain_check(&self, _x: &GridVector) -> bool {
        true
    }

    /// Upper bound on `‖L(x)‖` when one is known analytically.
    fn norm_bound(&self) -> Option<f64> {
        None
    }

    /// Tangential cone constant; zero for linear operators.
    fn eta(&self) -> f64 {
        0.0
    }

    fn is_linear(&self) -> bool;

    /// Zero element of the parameter space X.
    fn param_zeros(&self) -> GridVector;

    /// Zero element of the data space Y.
    fn data_zeros(&self) -> GridVector;
}
