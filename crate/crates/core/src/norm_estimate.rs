use crate::error::{Error, Result};
use crate::noise::{gaussian_like, rng};
use crate::problem::ForwardProblem;
use crate::space::GridVector;

/// Power iteration on `L(x)* L(x)`; returns an estimate of `‖L(x)‖`.
///
/// The estimate is `‖L(x) v_k‖` for the normalized k-th power iterate, which
/// is nondecreasing in `iters` and never exceeds the true norm.
pub fn estimate_operator_norm(
    prob: &dyn ForwardProblem,
    x: &GridVector,
    iters: usize,
    seed: u64,
) -> Result<f64> {
    if iters == 0 {
        return Err(Error::Config("power iteration needs at least one step".into()));
    }
    let mut rng = rng(seed);
    let mut v = gaussian_like(x, &mut rng);
    v.scale(1.0 / v.norm());
    let mut estimate = 0.0;
    for _ in 0..iters {
        let lv = prob.lin_apply(x, &v)?;
        estimate = lv.norm();
        let mut next = prob.lin_adjoint(x, &lv)?;
        let nn = next.norm();
        if nn == 0.0 {
            // v is in the kernel; restart from a fresh draw
            v = gaussian_like(x, &mut rng);
            v.scale(1.0 / v.norm());
            continue;
        }
        next.scale(1.0 / nn);
        v = next;
    }
    Ok(estimate)
}
