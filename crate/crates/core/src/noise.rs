//! Gaussian data perturbation with prescribed noise norms.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::space::GridVector;

/// Seeded generator used for every stochastic operation in the crate.
pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Standard Gaussian vector in the space of `like`, redrawn until nonzero.
pub fn gaussian_like(like: &GridVector, rng: &mut ChaCha20Rng) -> GridVector {
    loop {
        let values: Vec<f64> = (0..like.len()).map(|_| StandardNormal.sample(rng)).collect();
        let e = like.with_values(values);
        if e.norm() > 0.0 {
            return e;
        }
    }
}

/// Returns `y + δ e/‖e‖` so that `‖y^δ - y‖ = δ` in the weighted norm.
pub fn add_noise_exact(y: &GridVector, delta: f64, seed: u64) -> Result<GridVector> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::Config(format!("noise level must be >= 0, got {delta}")));
    }
    if delta == 0.0 {
        return Ok(y.clone());
    }
    let mut rng = rng(seed);
    let e = gaussian_like(y, &mut rng);
    let mut out = y.clone();
    out.axpy(delta / e.norm(), &e);
    Ok(out)
}

/// Relative-level perturbation; returns the noisy data and the absolute
/// level `δ = δ_rel ‖y‖`.
pub fn add_noise_relative(y: &GridVector, delta_rel: f64, seed: u64) -> Result<(GridVector, f64)> {
    if !(delta_rel >= 0.0) || !delta_rel.is_finite() {
        return Err(Error::Config(format!(
            "relative noise level must be >= 0, got {delta_rel}"
        )));
    }
    let ynorm = y.norm();
    if ynorm == 0.0 {
        return Err(Error::ZeroData);
    }
    let delta = delta_rel * ynorm;
    Ok((add_noise_exact(y, delta, seed)?, delta))
}
