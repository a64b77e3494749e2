//! Instantiates problems and regularizers from their specs.

use ahb_core::problems::{
    build_elliptic, build_fredholm, build_tomo, default_inclusions, shepp_logan, EllipticSetup,
    FredholmSetup, Geometry, TomoProblem,
};
use ahb_core::solvers::ErrorNorm;
use ahb_core::{ForwardProblem, GridVector, QuadraticReg, Regularizer, TVQuadraticReg};

use crate::config::{GeometrySpec, ProblemSpec, RegularizerSpec, TvUnits};
use crate::error::HarnessError;

pub enum ProblemInstance {
    Fredholm(FredholmSetup),
    Tomography {
        problem: TomoProblem,
        truth: GridVector,
        exact_data: GridVector,
    },
    Elliptic(EllipticSetup),
}

impl ProblemInstance {
    pub fn build(spec: &ProblemSpec) -> Result<Self, HarnessError> {
        Ok(match spec {
            ProblemSpec::Fredholm { nodes } => ProblemInstance::Fredholm(build_fredholm(*nodes)?),
            ProblemSpec::Tomography { rows, cols, angles, rays, geometry } => {
                let geometry = match geometry {
                    GeometrySpec::Parallel => Geometry::Parallel,
                    GeometrySpec::Fan => Geometry::Fan,
                };
                let problem = build_tomo(*rows, *cols, *angles, *rays, geometry)?;
                let truth = problem.image(shepp_logan(*rows, *cols))?;
                let exact_data = problem.apply(&truth)?;
                ProblemInstance::Tomography { problem, truth, exact_data }
            }
            ProblemSpec::Elliptic { grid } => {
                ProblemInstance::Elliptic(build_elliptic(*grid, default_inclusions(*grid))?)
            }
        })
    }

    pub fn forward(&self) -> &dyn ForwardProblem {
        match self {
            ProblemInstance::Fredholm(s) => &s.problem,
            ProblemInstance::Tomography { problem, .. } => problem,
            ProblemInstance::Elliptic(s) => &s.problem,
        }
    }

    pub fn truth(&self) -> &GridVector {
        match self {
            ProblemInstance::Fredholm(s) => &s.truth,
            ProblemInstance::Tomography { truth, .. } => truth,
            ProblemInstance::Elliptic(s) => &s.truth,
        }
    }

    pub fn exact_data(&self) -> &GridVector {
        match self {
            ProblemInstance::Fredholm(s) => &s.exact_data,
            ProblemInstance::Tomography { exact_data, .. } => exact_data,
            ProblemInstance::Elliptic(s) => &s.exact_data,
        }
    }

    /// Relative errors for the linear examples, absolute for the elliptic one.
    pub fn error_norm(&self) -> ErrorNorm {
        match self {
            ProblemInstance::Elliptic(_) => ErrorNorm::Absolute,
            _ => ErrorNorm::Relative,
        }
    }

    /// `(rows, cols)` of image-valued parameters.
    pub fn image_dims(&self) -> Option<(usize, usize)> {
        match self {
            ProblemInstance::Fredholm(_) => None,
            ProblemInstance::Tomography { problem, .. } => {
                let d = problem.dims();
                Some((d.rows, d.cols))
            }
            ProblemInstance::Elliptic(s) => Some((s.problem.m(), s.problem.m())),
        }
    }

    pub fn tomography_matrix(&self) -> Option<&ahb_core::problems::CsrMatrix> {
        match self {
            ProblemInstance::Tomography { problem, .. } => Some(problem.matrix()),
            _ => None,
        }
    }
}

/// Fresh regularizer for one run (TV warm-start state is per run).
pub fn make_regularizer(
    spec: &RegularizerSpec,
    inst: &ProblemInstance,
) -> Result<Box<dyn Regularizer>, HarnessError> {
    match spec {
        RegularizerSpec::Quadratic => Ok(Box::new(QuadraticReg)),
        RegularizerSpec::Tv { kappa, pdhg_iters, tv_units, warm_start } => {
            let (rows, cols) = inst.image_dims().ok_or_else(|| {
                HarnessError::Invalid(vec!["tv regularizer needs an image-valued problem".into()])
            })?;
            let w = inst.truth().weights()[0];
            let reg = TVQuadraticReg::new(*kappa, rows, cols, *pdhg_iters).with_warm_start(*warm_start);
            Ok(Box::new(match tv_units {
                TvUnits::Pixel => reg.with_tv_scale(w),
                TvUnits::Continuum => reg.with_cell_size(w.sqrt()),
            }))
        }
    }
}
