#![allow(dead_code)]

use std::sync::Arc;

use ahb_core::{ForwardProblem, GridVector, Result};
use nalgebra::DMatrix;

/// Dense linear operator on weighted spaces; the adjoint is
/// `W_x⁻¹ Aᵀ W_y` written out with nalgebra.
pub struct MatrixProblem {
    pub a: DMatrix<f64>,
    pub wx: Arc<[f64]>,
    pub wy: Arc<[f64]>,
}

impl MatrixProblem {
    pub fn euclidean(a: DMatrix<f64>) -> Self {
        let wx: Arc<[f64]> = vec![1.0; a.ncols()].into();
        let wy: Arc<[f64]> = vec![1.0; a.nrows()].into();
        Self { a, wx, wy }
    }

    pub fn diag(d: &[f64]) -> Self {
        Self::euclidean(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d)))
    }
}

impl ForwardProblem for MatrixProblem {
    fn name(&self) -> &str {
        "matrix"
    }

    fn apply(&self, x: &GridVector) -> Result<GridVector> {
        let v = &self.a * nalgebra::DVector::from_column_slice(x.values());
        GridVector::new(v.as_slice().to_vec(), Arc::clone(&self.wy))
    }

    fn lin_apply(&self, _x: &GridVector, h: &GridVector) -> Result<GridVector> {
        self.apply(h)
    }

    fn lin_adjoint(&self, _x: &GridVector, w: &GridVector) -> Result<GridVector> {
        let ww: Vec<f64> = w.values().iter().zip(self.wy.iter()).map(|(a, b)| a * b).collect();
        let v = self.a.transpose() * nalgebra::DVector::from_vec(ww);
        let out = v.iter().zip(self.wx.iter()).map(|(a, b)| a / b).collect();
        GridVector::new(out, Arc::clone(&self.wx))
    }

    fn is_linear(&self) -> bool {
        true
    }

    fn param_zeros(&self) -> GridVector {
        GridVector::zeros(Arc::clone(&self.wx))
    }

    fn data_zeros(&self) -> GridVector {
        GridVector::zeros(Arc::clone(&self.wy))
    }
}

/// `W^{1/2} K W^{1/2}` for the trapezoid-discretized Fredholm operator; its
/// spectral norm is the operator norm on the weighted space.
pub fn symmetrized_fredholm(n: usize) -> DMatrix<f64> {
    let setup = ahb_core::problems::build_fredholm(n).unwrap();
    let t = setup.problem.nodes();
    let w = setup.problem.weights();
    DMatrix::from_fn(n, n, |i, j| {
        w[i].sqrt() * ahb_core::problems::fredholm_kernel(t[i], t[j]) * w[j].sqrt()
    })
}
