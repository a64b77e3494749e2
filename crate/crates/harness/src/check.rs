//! Self-tests of a configured problem: adjoint consistency and, for the
//! nonlinear problem, the Taylor remainder ratio.

use ahb_core::noise::{gaussian_like, rng};
use ahb_core::problems::{adjoint_mismatch, taylor_remainder_check};

use crate::error::HarnessError;
use crate::setup::ProblemInstance;

pub const ADJOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn self_check(inst: &ProblemInstance, seed: u64) -> Result<Vec<CheckLine>, HarnessError> {
    let prob = inst.forward();
    let x = inst.truth();
    let mut lines = Vec::new();
    let mismatch = adjoint_mismatch(prob, x, 100, seed)?;
    lines.push(CheckLine {
        name: format!("{} adjoint", prob.name()),
        passed: mismatch < ADJOINT_TOL,
        detail: format!("max normalized mismatch {mismatch:.3e} over 100 pairs"),
    });
    if !prob.is_linear() {
        let mut r = rng(seed);
        let mut worst = (f64::NAN, true);
        let mut all = true;
        for _ in 0..20 {
            let mut c = gaussian_like(x, &mut r);
            c.values_mut().iter_mut().for_each(|v| *v = v.abs());
            let h = gaussian_like(x, &mut r);
            let h = h.scaled(1.0 / h.max_abs());
            let rep = taylor_remainder_check(prob, &c, &h, 0.5)?;
            if !rep.passed {
                all = false;
                worst = (rep.ratio, false);
            } else if worst.1 && (worst.0.is_nan() || (rep.ratio - 4.0).abs() > (worst.0 - 4.0).abs()) {
                worst = (rep.ratio, true);
            }
        }
        lines.push(CheckLine {
            name: format!("{} taylor", prob.name()),
            passed: all,
            detail: format!("20 pairs, ratio furthest from 4: {:.4}", worst.0),
        });
    }
    Ok(lines)
}
