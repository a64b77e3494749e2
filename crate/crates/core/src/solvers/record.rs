use std::fmt;

use crate::space::GridVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Discrepancy,
    MaxIter,
    ExactZeroResidual,
    /// Adaptive step with vanishing gradient and nonzero residual.
    Stalled,
    /// Iterate left the domain or a forward evaluation failed.
    Aborted,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Discrepancy => "discrepancy",
            StopReason::MaxIter => "max_iter",
            StopReason::ExactZeroResidual => "exact_zero_residual",
            StopReason::Stalled => "stalled",
            StopReason::Aborted => "aborted",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorNorm {
    /// `‖x - x†‖ / ‖x†‖`
    Relative,
    /// `‖x - x†‖`
    Absolute,
}

#[derive(Debug, Clone, Copy)]
pub struct Truth<'a> {
    pub x: &'a GridVector,
    pub norm: ErrorNorm,
}

impl Truth<'_> {
    pub fn error(&self, x: &GridVector) -> f64 {
        let d = x.distance(self.x);
        match self.norm {
            ErrorNorm::Absolute => d,
            ErrorNorm::Relative => d / self.x.norm(),
        }
    }
}

/// One logged iteration. Step quantities are absent on the terminal row.
#[derive(Debug, Clone, PartialEq)]
pub struct IterRow {
    pub n: usize,
    pub residual_norm: f64,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma_tilde: Option<f64>,
    pub truth_error: Option<f64>,
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub method: String,
    pub rows: Vec<IterRow>,
    pub stop_reason: StopReason,
    pub n_delta: Option<usize>,
    pub forward_evals: usize,
    pub adjoint_evals: usize,
    pub elapsed: f64,
    pub diagnostic: Option<String>,
    pub warnings: Vec<String>,
}

impl RunRecord {
    pub(crate) fn new(method: &str) -> Self {
        Self {
            method: method.to_string(),
            rows: Vec::new(),
            stop_reason: StopReason::MaxIter,
            n_delta: None,
            forward_evals: 0,
            adjoint_evals: 0,
            elapsed: 0.0,
            diagnostic: None,
            warnings: Vec::new(),
        }
    }

    /// Index of the last logged iterate.
    pub fn iterations(&self) -> usize {
        self.rows.last().map_or(0, |r| r.n)
    }

    pub fn final_error(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.truth_error)
    }

    pub fn final_residual(&self) -> Option<f64> {
        self.rows.last().map(|r| r.residual_norm)
    }

    pub(crate) fn finish(&mut self, reason: StopReason, n: usize, elapsed: f64) {
        self.stop_reason = reason;
        self.n_delta = (reason == StopReason::Discrepancy).then_some(n);
        self.elapsed = elapsed;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub alpha: f64,
    pub beta: f64,
    pub gamma_tilde: f64,
}

/// Snapshot handed to an observer once per iteration, before the update.
/// `step` is `None` on the terminal iterate.
pub struct IterateView<'a> {
    pub n: usize,
    pub xi: &'a GridVector,
    pub xi_prev: &'a GridVector,
    pub x: &'a GridVector,
    pub x_prev: &'a GridVector,
    pub residual_norm: f64,
    pub step: Option<StepInfo>,
}
