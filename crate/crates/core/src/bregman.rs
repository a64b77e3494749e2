use crate::error::{Error, Result};
use crate::regularizers::Regularizer;
use crate::space::GridVector;

/// `D_R^ξ(z, x) = R(z) - R(x) - ⟨ξ, z - x⟩` for `ξ ∈ ∂R(x)`.
///
/// The caller is responsible for `x = ∇R*(ξ)`.
pub fn bregman_distance(
    reg: &dyn Regularizer,
    xi: &GridVector,
    x: &GridVector,
    z: &GridVector,
) -> Result<f64> {
    let rz = reg.value(z);
    if !rz.is_finite() {
        return Err(Error::InfeasiblePoint);
    }
    let diff = z.sub(x);
    Ok(rz - reg.value(x) - xi.inner(&diff))
}
