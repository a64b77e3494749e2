//! Finite-dimensional Hilbert spaces represented on grids.
//!
//! A [`GridVector`] carries its quadrature weights so that
//! `inner(u, v) = Σ w_i u_i v_i` approximates the continuous inner product.
//! Weights are shared between vectors of the same space via `Arc`.

use std::ops::{Index, IndexMut};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GridVector {
    values: Vec<f64>,
    weights: Arc<[f64]>,
}

impl GridVector {
    pub fn new(values: Vec<f64>, weights: Arc<[f64]>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidVector("empty vector".into()));
        }
        if values.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                got: values.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidVector(format!("non-positive weight {w}")));
        }
        Ok(Self { values, weights })
    }

    /// Vector in plain Euclidean space (all weights one).
    pub fn euclidean(values: Vec<f64>) -> Self {
        let weights: Arc<[f64]> = vec![1.0; values.len()].into();
        Self::new(values, weights).expect("euclidean vector must be non-empty")
    }

    /// Vector sharing the weights of `self` with new values.
    pub fn with_values(&self, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), self.values.len(), "length mismatch");
        Self {
            values,
            weights: Arc::clone(&self.weights),
        }
    }

    pub fn zeros_like(&self) -> Self {
        self.with_values(vec![0.0; self.len()])
    }

    pub fn zeros(weights: Arc<[f64]>) -> Self {
        let n = weights.len();
        Self::new(vec![0.0; n], weights).expect("weights validated by caller")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn weights(&self) -> &Arc<[f64]> {
        &self.weights
    }

    pub fn same_space(&self, other: &GridVector) -> bool {
        Arc::ptr_eq(&self.weights, &other.weights) || self.weights == other.weights
    }

    pub fn inner(&self, other: &GridVector) -> f64 {
        debug_assert!(self.same_space(other), "inner product across spaces");
        self.values
            .iter()
            .zip(&other.values)
            .zip(self.weights.iter())
            .map(|((a, b), w)| w * a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    /// `self += a * x`
    pub fn axpy(&mut self, a: f64, x: &GridVector) {
        debug_assert_eq!(self.len(), x.len());
        for (s, v) in self.values.iter_mut().zip(&x.values) {
            *s += a * v;
        }
    }

    pub fn scale(&mut self, a: f64) {
        self.values.iter_mut().for_each(|v| *v *= a);
    }

    pub fn scaled(&self, a: f64) -> GridVector {
        self.with_values(self.values.iter().map(|v| a * v).collect())
    }

    pub fn sub(&self, other: &GridVector) -> GridVector {
        debug_assert_eq!(self.len(), other.len());
        self.with_values(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn add(&self, other: &GridVector) -> GridVector {
        debug_assert_eq!(self.len(), other.len());
        self.with_values(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Norm of `self - other` without allocating.
    pub fn distance(&self, other: &GridVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .zip(self.weights.iter())
            .map(|((a, b), w)| w * (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Index<usize> for GridVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

impl IndexMut<usize> for GridVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.values[i]
    }
}

/// Composite trapezoidal weights for `n` uniform nodes on `[0, 1]`.
pub fn trapezoid_weights(n: usize) -> Arc<[f64]> {
    assert!(n >= 2, "trapezoidal rule needs at least two nodes");
    let h = 1.0 / (n - 1) as f64;
    let mut w = vec![h; n];
    w[0] = h / 2.0;
    w[n - 1] = h / 2.0;
    w.into()
}

pub fn uniform_weights(n: usize, w: f64) -> Arc<[f64]> {
    vec![w; n].into()
}
