//! Runs every (noise level, repeat, method) combination of a config.

use ahb_core::noise::{add_noise_exact, add_noise_relative};
use ahb_core::solvers::{
    ahb_solve, landweber_solve, nesterov_solve, nu_method_solve, NesterovConfig, NuConfig, RunRecord,
    SolverConfig, StepRule, StopReason, Truth,
};
use ahb_core::{estimate_operator_norm, ForwardProblem, GridVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, MethodSpec, NoiseKind, StepSpec};
use crate::error::HarnessError;
use crate::setup::{make_regularizer, ProblemInstance};

const NORM_ITERS: usize = 200;
const NORM_SEED: u64 = 0x5eed;

/// One noisy data set.
#[derive(Debug, Clone)]
pub struct NoisyData {
    pub level: usize,
    pub repeat: usize,
    pub seed: u64,
    /// Absolute noise level `‖y^δ - y‖`.
    pub delta: f64,
    /// Relative level when the config is relative.
    pub delta_rel: Option<f64>,
    pub y: GridVector,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub method: usize,
    pub label: String,
    pub kind: &'static str,
    pub level: usize,
    pub repeat: usize,
    pub seed: u64,
    pub delta: f64,
    pub delta_rel: Option<f64>,
    pub record: RunRecord,
    pub x: GridVector,
}

impl RunOutcome {
    /// File stem shared by the log, image and timing entries of this run.
    pub fn stem(&self) -> String {
        format!("{}_l{}_r{}", self.label, self.level, self.repeat)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub method: String,
    pub delta: f64,
    pub delta_rel: Option<f64>,
    pub seed: u64,
    pub iterations: usize,
    pub error: Option<f64>,
    pub residual: Option<f64>,
    pub stop_reason: String,
}

impl From<&RunOutcome> for SummaryRow {
    fn from(o: &RunOutcome) -> Self {
        Self {
            method: o.label.clone(),
            delta: o.delta,
            delta_rel: o.delta_rel,
            seed: o.seed,
            iterations: o.record.iterations(),
            error: o.record.final_error(),
            residual: o.record.final_residual(),
            stop_reason: o.record.stop_reason.as_str().to_string(),
        }
    }
}

/// Exact-data (δ = 0) run used for convergence curves.
#[derive(Debug, Clone)]
pub struct ExactRun {
    pub label: String,
    pub record: RunRecord,
}

pub struct ExperimentReport {
    pub instance: ProblemInstance,
    pub outcomes: Vec<RunOutcome>,
    pub exact_runs: Vec<ExactRun>,
    /// Methods left out as unsupported, with reasons.
    pub skipped: Vec<String>,
}

impl ExperimentReport {
    pub fn summary(&self) -> Vec<SummaryRow> {
        self.outcomes.iter().map(SummaryRow::from).collect()
    }

    /// True when nothing was skipped and every run stopped by the
    /// discrepancy principle.
    pub fn all_discrepancy(&self) -> bool {
        self.skipped.is_empty()
            && self.outcomes.iter().all(|o| o.record.stop_reason == StopReason::Discrepancy)
    }
}

/// Noisy data for every `(level, repeat)`; repeat `r` uses seed `seed + r`.
pub fn noisy_data(cfg: &ExperimentConfig, exact: &GridVector) -> Result<Vec<NoisyData>, HarnessError> {
    let mut out = Vec::new();
    for (level, value) in cfg.noise.levels.iter().enumerate() {
        for repeat in 0..cfg.noise.repeats {
            let seed = cfg.noise.seed.wrapping_add(repeat as u64);
            let (y, delta, delta_rel) = match cfg.noise.kind {
                NoiseKind::Absolute => (add_noise_exact(exact, *value, seed)?, *value, None),
                NoiseKind::Relative => {
                    let (y, d) = add_noise_relative(exact, *value, seed)?;
                    (y, d, Some(*value))
                }
            };
            out.push(NoisyData { level, repeat, seed, delta, delta_rel, y });
        }
    }
    Ok(out)
}

fn needs_norm(m: &MethodSpec) -> bool {
    match m {
        MethodSpec::Ahb { step, norm_bound, .. } | MethodSpec::Landweber { step, norm_bound, .. } => {
            *step == StepSpec::Constant && norm_bound.is_none()
        }
        MethodSpec::Nu { .. } | MethodSpec::Nesterov { .. } => true,
    }
}

fn solver_config(m: &MethodSpec, norm: Option<f64>) -> SolverConfig {
    let base = SolverConfig::default();
    match m {
        MethodSpec::Ahb { tau, beta_cap, mu0, mu1, eta, step, norm_bound, max_iter, .. } => SolverConfig {
            tau: *tau,
            beta_cap: *beta_cap,
            mu0: *mu0,
            mu1: *mu1,
            eta: *eta,
            step_rule: step_rule(*step),
            max_iter: max_iter.unwrap_or(base.max_iter),
            norm_bound: norm_bound.or(norm),
            ..base
        },
        MethodSpec::Landweber { tau, mu0, mu1, eta, step, norm_bound, max_iter, .. } => SolverConfig {
            tau: *tau,
            beta_cap: 0.0,
            mu0: *mu0,
            mu1: *mu1,
            eta: *eta,
            step_rule: step_rule(*step),
            max_iter: max_iter.unwrap_or(base.max_iter),
            norm_bound: norm_bound.or(norm),
            ..base
        },
        _ => base,
    }
}

fn step_rule(s: StepSpec) -> StepRule {
    match s {
        StepSpec::Constant => StepRule::Constant,
        StepSpec::Adaptive => StepRule::Adaptive,
    }
}

/// Runs one method on one data set.
pub fn run_method(
    cfg: &ExperimentConfig,
    inst: &ProblemInstance,
    method: &MethodSpec,
    norm: Option<f64>,
    y: &GridVector,
    delta: f64,
) -> Result<(GridVector, RunRecord), HarnessError> {
    let local;
    let prob: &dyn ForwardProblem = match inst {
        ProblemInstance::Elliptic(s) => {
            local = s.problem.clone();
            &local
        }
        _ => inst.forward(),
    };
    let truth = Some(Truth { x: inst.truth(), norm: inst.error_norm() });
    let gamma = |scale: f64| -> Result<f64, HarnessError> {
        let l = norm.ok_or_else(|| HarnessError::Invalid(vec!["operator norm unavailable".into()]))?;
        Ok(scale / (l * l))
    };
    let result = match method {
        MethodSpec::Ahb { .. } => {
            let mut reg = make_regularizer(&cfg.regularizer, inst)?;
            ahb_solve(prob, reg.as_mut(), y, delta, &prob.param_zeros(), &solver_config(method, norm), truth)?
        }
        MethodSpec::Landweber { .. } => {
            let mut reg = make_regularizer(&cfg.regularizer, inst)?;
            landweber_solve(prob, reg.as_mut(), y, delta, &prob.param_zeros(), &solver_config(method, norm), truth)?
        }
        MethodSpec::Nu { tau, nu, gamma_scale, max_iter, .. } => {
            let mut c = NuConfig::new(*nu, gamma(*gamma_scale)?, *tau);
            if let Some(n) = max_iter {
                c.max_iter = *n;
            }
            nu_method_solve(prob, y, delta, &c, truth)?
        }
        MethodSpec::Nesterov { tau, alpha_shift, gamma_scale, max_iter, .. } => {
            let mut c = NesterovConfig::new(*alpha_shift, gamma(*gamma_scale)?, *tau);
            if let Some(n) = max_iter {
                c.max_iter = *n;
            }
            nesterov_solve(prob, y, delta, &c, truth)?
        }
    };
    Ok(result)
}

/// Operator norm at the zero parameter, when any method needs it.
pub fn operator_norm(cfg: &ExperimentConfig, inst: &ProblemInstance) -> Result<Option<f64>, HarnessError> {
    if !cfg.methods.iter().any(needs_norm) {
        return Ok(None);
    }
    let prob = inst.forward();
    let l = estimate_operator_norm(prob, &prob.param_zeros(), NORM_ITERS, NORM_SEED)?;
    log::info!("operator norm estimate {l:.6e}");
    Ok(Some(l))
}

/// Validates the config, builds the problem and runs all combinations on a
/// pool of `jobs` threads (rayon's default when `None`). Results come back
/// in config order regardless of scheduling.
pub fn run_experiment(cfg: &ExperimentConfig, jobs: Option<usize>) -> Result<ExperimentReport, HarnessError> {
    cfg.validate()?;
    let unsupported = cfg.unsupported_methods();
    for (_, why) in &unsupported {
        log::warn!("skipping {why}");
    }
    let active: Vec<usize> = (0..cfg.methods.len())
        .filter(|i| !unsupported.iter().any(|(j, _)| j == i))
        .collect();

    let inst = ProblemInstance::build(&cfg.problem)?;
    let norm = operator_norm(cfg, &inst)?;
    let data = noisy_data(cfg, inst.exact_data())?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| HarnessError::Io(e.to_string()))?;

    let jobs_list: Vec<(&NoisyData, usize)> =
        data.iter().flat_map(|d| active.iter().map(move |m| (d, *m))).collect();
    let outcomes = pool.install(|| {
        jobs_list
            .par_iter()
            .map(|(d, mi)| {
                let method = &cfg.methods[*mi];
                let (x, record) = run_method(cfg, &inst, method, norm, &d.y, d.delta)?;
                log::info!(
                    "{} level {} repeat {}: {} iterations, {}",
                    method.label(),
                    d.level,
                    d.repeat,
                    record.iterations(),
                    record.stop_reason
                );
                Ok(RunOutcome {
                    method: *mi,
                    label: method.label(),
                    kind: method.kind(),
                    level: d.level,
                    repeat: d.repeat,
                    seed: d.seed,
                    delta: d.delta,
                    delta_rel: d.delta_rel,
                    record,
                    x,
                })
            })
            .collect::<Result<Vec<_>, HarnessError>>()
    })?;

    let exact_runs = if cfg.curves.exact_data_iters > 0 {
        pool.install(|| {
            active
                .par_iter()
                .map(|mi| {
                    let mut method = cfg.methods[*mi].clone();
                    *method.max_iter_mut() = Some(cfg.curves.exact_data_iters);
                    let (_, record) = run_method(cfg, &inst, &method, norm, inst.exact_data(), 0.0)?;
                    Ok(ExactRun { label: method.label(), record })
                })
                .collect::<Result<Vec<_>, HarnessError>>()
        })?
    } else {
        Vec::new()
    };

    Ok(ExperimentReport {
        instance: inst,
        outcomes,
        exact_runs,
        skipped: unsupported.into_iter().map(|(_, why)| why).collect(),
    })
}
