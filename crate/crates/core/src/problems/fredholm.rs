use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problem::ForwardProblem;
use crate::space::{trapezoid_weights, GridVector};

/// `κ(s, t) = 40 s(1-t)` for `s ≤ t`, `40 t(1-s)` otherwise.
pub fn fredholm_kernel(s: f64, t: f64) -> f64 {
    if s <= t {
        40.0 * s * (1.0 - t)
    } else {
        40.0 * t * (1.0 - s)
    }
}

/// `x†(t) = 4t(1-t) + sin(2πt)`
pub fn fredholm_truth(t: f64) -> f64 {
    4.0 * t * (1.0 - t) + (2.0 * PI * t).sin()
}

/// First-kind integral operator `(Fx)(s) = ∫₀¹ κ(s,t) x(t) dt` on
/// `L²[0,1]`, discretized with the trapezoidal rule on uniform nodes.
///
/// The kernel is a scaled Green's function, so the quadrature sum is
/// evaluated with prefix sums in O(n) rather than a dense product.
#[derive(Debug, Clone)]
pub struct FredholmProblem {
    nodes: Vec<f64>,
    weights: Arc<[f64]>,
}

#[derive(Debug, Clone)]
pub struct FredholmSetup {
    pub problem: FredholmProblem,
    pub truth: GridVector,
    pub exact_data: GridVector,
}

pub fn build_fredholm(n_nodes: usize) -> Result<FredholmSetup> {
    if n_nodes < 2 {
        return Err(Error::Config(format!("need at least 2 nodes, got {n_nodes}")));
    }
    let h = 1.0 / (n_nodes - 1) as f64;
    let nodes: Vec<f64> = (0..n_nodes).map(|i| i as f64 * h).collect();
    let problem = FredholmProblem {
        weights: trapezoid_weights(n_nodes),
        nodes,
    };
    let truth = problem.param_zeros().with_values(
        problem.nodes.iter().map(|t| fredholm_truth(*t)).collect(),
    );
    let exact_data = problem.integrate(&truth);
    Ok(FredholmSetup { problem, truth, exact_data })
}

impl FredholmProblem {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &Arc<[f64]> {
        &self.weights
    }

    /// Dense row-major kernel matrix `K_ij = κ(s_i, t_j)`.
    pub fn kernel_matrix(&self) -> Vec<f64> {
        let n = self.nodes.len();
        let mut k = Vec::with_capacity(n * n);
        for s in &self.nodes {
            for t in &self.nodes {
                k.push(fredholm_kernel(*s, *t));
            }
        }
        k
    }

    /// `y_i = Σ_j w_j κ(s_i, t_j) x_j`
    ///
    /// For `t_j ≤ s_i` the kernel is `40 t_j (1 - s_i)`, otherwise
    /// `40 s_i (1 - t_j)`, so `y_i = 40[(1-s_i) P_i + s_i Q_i]` with
    /// `P_i = Σ_{j≤i} w_j t_j x_j` and `Q_i = Σ_{j>i} w_j (1-t_j) x_j`.
    fn integrate(&self, x: &GridVector) -> GridVector {
        let n = self.nodes.len();
        let xv = x.values();
        let mut suffix = vec![0.0; n];
        let mut acc = 0.0;
        for j in (0..n).rev() {
            suffix[j] = acc;
            acc += self.weights[j] * (1.0 - self.nodes[j]) * xv[j];
        }
        let mut prefix = 0.0;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let s = self.nodes[i];
            prefix += self.weights[i] * s * xv[i];
            out.push(40.0 * ((1.0 - s) * prefix + s * suffix[i]));
        }
        x.with_values(out)
    }
}

impl ForwardProblem for FredholmProblem {
    fn name(&self) -> &str {
        "fredholm"
    }

    fn apply(&self, x: &GridVector) -> Result<GridVector> {
        check_len(x, self.nodes.len())?;
        Ok(self.integrate(x))
    }

    fn lin_apply(&self, _x: &GridVector, h: &GridVector) -> Result<GridVector> {
        self.apply(h)
    }

    /// The kernel is symmetric and both spaces carry the same weights, so
    /// the operator is self-adjoint.
    fn lin_adjoint(&self, _x: &GridVector, w: &GridVector) -> Result<GridVector> {
        self.apply(w)
    }

    fn is_linear(&self) -> bool {
        true
    }

    fn param_zeros(&self) -> GridVector {
        GridVector::zeros(Arc::clone(&self.weights))
    }

    fn data_zeros(&self) -> GridVector {
        self.param_zeros()
    }
}

pub(crate) fn check_len(x: &GridVector, n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_values() {
        assert_eq!(fredholm_kernel(0.5, 0.5), 10.0);
        assert_eq!(fredholm_kernel(0.2, 0.7), fredholm_kernel(0.7, 0.2));
        assert_eq!(fredholm_truth(0.0), 0.0);
        assert!(fredholm_truth(1.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_matrix_symmetric() {
        let setup = build_fredholm(40).unwrap();
        let k = setup.problem.kernel_matrix();
        let n = 40;
        let worst = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (k[i * n + j] - k[j * n + i]).abs())
            .fold(0.0, f64::max);
        assert_eq!(worst, 0.0);
    }

    #[test]
    fn fast_apply_matches_dense_sum() {
        let setup = build_fredholm(57).unwrap();
        let p = &setup.problem;
        let k = p.kernel_matrix();
        let x = &setup.truth;
        let fast = p.apply(x).unwrap();
        for i in 0..57 {
            let dense: f64 = (0..57).map(|j| k[i * 57 + j] * p.weights()[j] * x[j]).sum();
            assert!((fast[i] - dense).abs() < 1e-13, "row {i}");
        }
    }

    #[test]
    fn rejects_tiny_grid() {
        assert!(build_fredholm(1).is_err());
    }
}
