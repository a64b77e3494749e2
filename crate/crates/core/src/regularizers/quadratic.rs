use super::Regularizer;
use crate::space::GridVector;

/// `R(x) = ‖x‖²/2`, for which `∇R*` is the identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct QuadraticReg;

impl Regularizer for QuadraticReg {
    fn name(&self) -> &str {
        "quadratic"
    }

    fn value(&self, x: &GridVector) -> f64 {
        0.5 * x.norm_sq()
    }

    fn conj_grad(&mut self, xi: &GridVector) -> GridVector {
        xi.clone()
    }

    fn sigma(&self) -> f64 {
        0.5
    }

    fn is_quadratic(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bregman::bregman_distance;
    use crate::space::trapezoid_weights;

    #[test]
    fn conj_grad_is_identity() {
        let w = trapezoid_weights(7);
        let xi = GridVector::new((0..7).map(|i| i as f64 - 3.0).collect(), w).unwrap();
        assert_eq!(QuadraticReg.conj_grad(&xi), xi);
    }

    #[test]
    fn bregman_is_half_squared_distance() {
        let w = trapezoid_weights(9);
        let x = GridVector::new((0..9).map(|i| (i as f64).cos()).collect(), w.clone()).unwrap();
        let z = GridVector::new((0..9).map(|i| (i as f64 * 0.7).sin()).collect(), w).unwrap();
        let d = bregman_distance(&QuadraticReg, &x, &x, &z).unwrap();
        assert!((d - 0.5 * z.sub(&x).norm_sq()).abs() < 1e-14);
        assert_eq!(bregman_distance(&QuadraticReg, &x, &x, &x).unwrap(), 0.0);
        assert!(d >= QuadraticReg.sigma() * z.sub(&x).norm_sq() - 1e-14);
    }
}
