//! Identification of `c` in `-Δu + c u = f` on `(0,1)²`, `u = g` on the
//! boundary, from measurements of `u`.
//!
//! Discretized with the 5-point stencil on `m × m` interior nodes,
//! `h = 1/(m+1)`; node `(i, j)` sits at `(x, y) = ((j+1)h, (i+1)h)` and is
//! stored at index `i + j m`. Both spaces carry the L² weights `h²`.

use std::sync::{Arc, Mutex};

use super::banded::BandedCholesky;
use super::fredholm::check_len;
use crate::error::{Error, Result};
use crate::problem::ForwardProblem;
use crate::space::{uniform_weights, GridVector};

struct Factorization {
    c: Vec<f64>,
    chol: BandedCholesky,
    u: Vec<f64>,
}

pub struct EllipticProblem {
    m: usize,
    h: f64,
    weights: Arc<[f64]>,
    /// `f` plus the boundary values folded into the right-hand side.
    rhs: Vec<f64>,
    c_hat: Vec<f64>,
    eps0: f64,
    cache: Mutex<Option<Arc<Factorization>>>,
}

impl std::fmt::Debug for EllipticProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EllipticProblem").field("m", &self.m).field("h", &self.h).finish()
    }
}

/// Clones share nothing mutable: the copy starts with an empty cache, so
/// concurrent runs can each own one.
impl Clone for EllipticProblem {
    fn clone(&self) -> Self {
        Self {
            m: self.m,
            h: self.h,
            weights: Arc::clone(&self.weights),
            rhs: self.rhs.clone(),
            c_hat: self.c_hat.clone(),
            eps0: self.eps0,
            cache: Mutex::new(None),
        }
    }
}

pub struct EllipticSetup {
    pub problem: EllipticProblem,
    pub truth: GridVector,
    pub exact_data: GridVector,
}

/// Piecewise constant test parameter: a disc of height 1 and a square of
/// height 1.5 on a zero background.
pub fn default_inclusions(m: usize) -> Vec<f64> {
    let h = 1.0 / (m + 1) as f64;
    let mut c = vec![0.0; m * m];
    for j in 0..m {
        let x = (j + 1) as f64 * h;
        for i in 0..m {
            let y = (i + 1) as f64 * h;
            let disc = (x - 0.3).powi(2) + (y - 0.7).powi(2) <= 0.15 * 0.15;
            let square = (0.55..=0.85).contains(&x) && (0.15..=0.45).contains(&y);
            c[i + j * m] = if disc {
                1.0
            } else if square {
                1.5
            } else {
                0.0
            };
        }
    }
    c
}

/// Builds the problem with `u(c†) = x + y`: since `Δ(x+y) = 0` this sets
/// `f = c†(x+y)` and `g = x + y`. The exact data is the discrete solve at
/// `c†`.
pub fn build_elliptic(m: usize, c_true: Vec<f64>) -> Result<EllipticSetup> {
    if m < 8 {
        return Err(Error::Config(format!("grid must have at least 8 interior nodes, got {m}")));
    }
    if c_true.len() != m * m {
        return Err(Error::DimensionMismatch { expected: m * m, got: c_true.len() });
    }
    if c_true.iter().any(|v| *v < 0.0) {
        return Err(Error::Config("true parameter must be nonnegative".into()));
    }
    let h = 1.0 / (m + 1) as f64;
    let g = |x: f64, y: f64| x + y;
    let mut rhs = vec![0.0; m * m];
    let h2 = h * h;
    for j in 0..m {
        let x = (j + 1) as f64 * h;
        for i in 0..m {
            let y = (i + 1) as f64 * h;
            let k = i + j * m;
            let mut b = c_true[k] * g(x, y);
            if i == 0 {
                b += g(x, 0.0) / h2;
            }
            if i + 1 == m {
                b += g(x, 1.0) / h2;
            }
            if j == 0 {
                b += g(0.0, y) / h2;
            }
            if j + 1 == m {
                b += g(1.0, y) / h2;
            }
            rhs[k] = b;
        }
    }
    let weights = uniform_weights(m * m, h2);
    let problem = EllipticProblem {
        m,
        h,
        weights: Arc::clone(&weights),
        rhs,
        c_hat: c_true.clone(),
        eps0: 10.0,
        cache: Mutex::new(None),
    };
    let truth = GridVector::new(c_true, weights)?;
    let exact_data = problem.apply(&truth)?;
    Ok(EllipticSetup { problem, truth, exact_data })
}

impl EllipticProblem {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn weights(&self) -> &Arc<[f64]> {
        &self.weights
    }

    /// Radius of the admissible L² ball around the reference parameter.
    pub fn with_domain_radius(mut self, eps0: f64) -> Self {
        self.eps0 = eps0;
        self
    }

    fn factor(&self, c: &[f64]) -> Result<Arc<Factorization>> {
        if let Some(f) = self.cache.lock().unwrap().as_ref() {
            if f.c == c {
                return Ok(Arc::clone(f));
            }
        }
        let m = self.m;
        let inv_h2 = 1.0 / (self.h * self.h);
        let chol = BandedCholesky::factor(m * m, m, |a, b| {
            if a == b {
                4.0 * inv_h2 + c[a]
            } else if (a - b == 1 && a % m != 0) || a - b == m {
                -inv_h2
            } else {
                0.0
            }
        })?;
        let u = chol.solve(&self.rhs);
        let f = Arc::new(Factorization { c: c.to_vec(), chol, u });
        *self.cache.lock().unwrap() = Some(Arc::clone(&f));
        Ok(f)
    }

    /// `A(c)⁻¹ b` with homogeneous boundary values.
    pub fn solve_homogeneous(&self, c: &GridVector, b: &[f64]) -> Result<Vec<f64>> {
        check_len(c, self.m * self.m)?;
        Ok(self.factor(c.values())?.chol.solve(b))
    }

    fn vector(&self, values: Vec<f64>) -> GridVector {
        GridVector::new(values, Arc::clone(&self.weights)).expect("weights validated at build")
    }
}

impl ForwardProblem for EllipticProblem {
    fn name(&self) -> &str {
        "elliptic"
    }

    fn apply(&self, c: &GridVector) -> Result<GridVector> {
        check_len(c, self.m * self.m)?;
        Ok(self.vector(self.factor(c.values())?.u.clone()))
    }

    /// `F'(c) h = -A(c)⁻¹ (h u(c))`
    fn lin_apply(&self, c: &GridVector, dir: &GridVector) -> Result<GridVector> {
        check_len(c, self.m * self.m)?;
        check_len(dir, self.m * self.m)?;
        let f = self.factor(c.values())?;
        let b: Vec<f64> = dir.values().iter().zip(&f.u).map(|(a, u)| -a * u).collect();
        Ok(self.vector(f.chol.solve(&b)))
    }

    /// `F'(c)* w = -u(c) A(c)⁻¹ w`
    fn lin_adjoint(&self, c: &GridVector, w: &GridVector) -> Result<GridVector> {
        check_len(c, self.m * self.m)?;
        check_len(w, self.m * self.m)?;
        let f = self.factor(c.values())?;
        let z = f.chol.solve(w.values());
        Ok(self.vector(z.iter().zip(&f.u).map(|(a, u)| -a * u).collect()))
    }

    /// Fails only when `A(c)` is not positive definite; leaving the L² ball
    /// around the reference parameter is logged but tolerated.
    fn domain_check(&self, c: &GridVector) -> bool {
        if c.len() != self.m * self.m || self.factor(c.values()).is_err() {
            return false;
        }
        let dist = c.values()
            .iter()
            .zip(&self.c_hat)
            .zip(self.weights.iter())
            .map(|((a, b), w)| w * (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if dist > self.eps0 {
            log::warn!("elliptic: parameter at L2 distance {dist:.3e} > {} from reference", self.eps0);
        }
        true
    }

    fn is_linear(&self) -> bool {
        false
    }

    fn param_zeros(&self) -> GridVector {
        GridVector::zeros(Arc::clone(&self.weights))
    }

    fn data_zeros(&self) -> GridVector {
        self.param_zeros()
    }
}
