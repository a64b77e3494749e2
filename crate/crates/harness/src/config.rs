//! Experiment configuration, read from TOML. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub problem: ProblemSpec,
    pub regularizer: RegularizerSpec,
    pub noise: NoiseSpec,
    #[serde(rename = "method")]
    pub methods: Vec<MethodSpec>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub curves: CurveSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProblemSpec {
    Fredholm {
        nodes: usize,
    },
    Tomography {
        rows: usize,
        cols: usize,
        angles: usize,
        rays: usize,
        #[serde(default)]
        geometry: GeometrySpec,
    },
    Elliptic {
        /// Interior nodes per direction.
        grid: usize,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometrySpec {
    #[default]
    Parallel,
    Fan,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RegularizerSpec {
    Quadratic,
    Tv {
        kappa: f64,
        pdhg_iters: usize,
        #[serde(default)]
        tv_units: TvUnits,
        #[serde(default = "yes")]
        warm_start: bool,
    },
}

/// How the TV seminorm is weighted on grids with quadrature weights `w`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TvUnits {
    /// Pixel-unit TV scaled by `w`: the prox is the denoiser with parameter κ.
    #[default]
    Pixel,
    /// `∫|∇c|` on the unit square, i.e. pixel TV scaled by the cell size.
    Continuum,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub levels: Vec<f64>,
    pub seed: u64,
    #[serde(default = "one")]
    pub repeats: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    /// `‖y^δ - y‖ = δ`
    Absolute,
    /// `‖y^δ - y‖ = δ_rel ‖y‖`
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepSpec {
    Constant,
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MethodSpec {
    Ahb {
        label: Option<String>,
        tau: f64,
        /// `inf` for no cap.
        beta_cap: f64,
        mu0: f64,
        #[serde(default = "unit")]
        mu1: f64,
        #[serde(default)]
        eta: f64,
        step: StepSpec,
        norm_bound: Option<f64>,
        max_iter: Option<usize>,
    },
    Landweber {
        label: Option<String>,
        tau: f64,
        mu0: f64,
        #[serde(default = "unit")]
        mu1: f64,
        #[serde(default)]
        eta: f64,
        step: StepSpec,
        norm_bound: Option<f64>,
        max_iter: Option<usize>,
    },
    Nu {
        label: Option<String>,
        tau: f64,
        nu: f64,
        /// γ = gamma_scale / ‖A‖²
        gamma_scale: f64,
        max_iter: Option<usize>,
    },
    Nesterov {
        label: Option<String>,
        tau: f64,
        alpha_shift: f64,
        /// γ = gamma_scale / ‖A‖²
        gamma_scale: f64,
        max_iter: Option<usize>,
    },
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_out")]
    pub dir: PathBuf,
    /// PGM and CSV reconstructions for image-valued problems.
    #[serde(default = "yes")]
    pub images: bool,
    /// Coordinate-format dump of the tomography matrix.
    #[serde(default)]
    pub export_matrix: bool,
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { dir: default_out(), images: true, export_matrix: false }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    /// Index into `noise.levels` of the noisy run whose error curve is
    /// written; curves are off when absent.
    pub noisy_level: Option<usize>,
    /// Iterations of the exact-data (δ = 0) runs; 0 disables them.
    #[serde(default)]
    pub exact_data_iters: usize,
}

impl MethodSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MethodSpec::Ahb { .. } => "ahb",
            MethodSpec::Landweber { .. } => "landweber",
            MethodSpec::Nu { .. } => "nu",
            MethodSpec::Nesterov { .. } => "nesterov",
        }
    }

    /// Display name; defaults to the method kind.
    pub fn label(&self) -> String {
        let l = match self {
            MethodSpec::Ahb { label, .. }
            | MethodSpec::Landweber { label, .. }
            | MethodSpec::Nu { label, .. }
            | MethodSpec::Nesterov { label, .. } => label,
        };
        l.clone().unwrap_or_else(|| self.kind().to_string())
    }

    pub fn tau(&self) -> f64 {
        match self {
            MethodSpec::Ahb { tau, .. }
            | MethodSpec::Landweber { tau, .. }
            | MethodSpec::Nu { tau, .. }
            | MethodSpec::Nesterov { tau, .. } => *tau,
        }
    }

    pub fn max_iter_mut(&mut self) -> &mut Option<usize> {
        match self {
            MethodSpec::Ahb { max_iter, .. }
            | MethodSpec::Landweber { max_iter, .. }
            | MethodSpec::Nu { max_iter, .. }
            | MethodSpec::Nesterov { max_iter, .. } => max_iter,
        }
    }

    pub fn is_baseline(&self) -> bool {
        matches!(self, MethodSpec::Nu { .. } | MethodSpec::Nesterov { .. })
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: Self = toml::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Applies command-line overrides.
    pub fn apply_overrides(&mut self, seed: Option<u64>, out: Option<PathBuf>, max_iter: Option<usize>) {
        if let Some(s) = seed {
            self.noise.seed = s;
        }
        if let Some(d) = out {
            self.output.dir = d;
        }
        if let Some(n) = max_iter {
            for m in &mut self.methods {
                *m.max_iter_mut() = Some(n);
            }
        }
    }

    /// Methods that cannot run on this problem/regularizer pair, with the
    /// reason. They are skipped rather than rejecting the whole config.
    pub fn unsupported_methods(&self) -> Vec<(usize, String)> {
        let linear = !matches!(self.problem, ProblemSpec::Elliptic { .. });
        let quadratic = matches!(self.regularizer, RegularizerSpec::Quadratic);
        self.methods
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_baseline() && !(linear && quadratic))
            .map(|(i, m)| {
                (i, format!("{}: {} needs a linear problem with the quadratic regularizer", m.label(), m.kind()))
            })
            .collect()
    }

    /// Checks parameters of every section up front; returns all problems
    /// found.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let mut errs = Vec::new();
        match &self.problem {
            ProblemSpec::Fredholm { nodes } if *nodes < 2 => {
                errs.push(format!("fredholm needs at least 2 nodes, got {nodes}"))
            }
            ProblemSpec::Tomography { rows, cols, angles, rays, .. } => {
                if *rows < 8 || *cols < 8 {
                    errs.push(format!("tomography image must be at least 8x8, got {rows}x{cols}"));
                }
                if *angles == 0 || *rays == 0 {
                    errs.push("tomography needs at least one angle and one ray".into());
                }
            }
            ProblemSpec::Elliptic { grid } if *grid < 8 => {
                errs.push(format!("elliptic grid must be at least 8, got {grid}"))
            }
            _ => {}
        }
        let image = !matches!(self.problem, ProblemSpec::Fredholm { .. });
        if let RegularizerSpec::Tv { kappa, pdhg_iters, .. } = &self.regularizer {
            if !image {
                errs.push("tv regularizer needs an image-valued problem".into());
            }
            if !(*kappa > 0.0) {
                errs.push(format!("kappa must be positive, got {kappa}"));
            }
            if *pdhg_iters == 0 {
                errs.push("pdhg_iters must be positive".into());
            }
        }
        if self.noise.levels.is_empty() {
            errs.push("noise.levels is empty".into());
        }
        if self.noise.levels.iter().any(|d| !(*d > 0.0) || !d.is_finite()) {
            errs.push("noise levels must be positive and finite".into());
        }
        if self.noise.repeats == 0 {
            errs.push("noise.repeats must be positive".into());
        }
        if self.methods.is_empty() {
            errs.push("no [[method]] entries".into());
        }
        let mut labels = std::collections::HashSet::new();
        for m in &self.methods {
            let label = m.label();
            if !labels.insert(label.clone()) {
                errs.push(format!("duplicate method label {label:?}"));
            }
            if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c)) {
                errs.push(format!("label {label:?} must be nonempty and use [A-Za-z0-9_.-]"));
            }
            if !(m.tau() > 1.0) {
                errs.push(format!("{label}: tau must exceed 1"));
            }
            match m {
                MethodSpec::Ahb { beta_cap, mu0, mu1, eta, .. } => {
                    if !(*beta_cap >= 0.0) {
                        errs.push(format!("{label}: beta_cap must be >= 0"));
                    }
                    check_step(&label, *mu0, *mu1, *eta, &mut errs);
                }
                MethodSpec::Landweber { mu0, mu1, eta, .. } => check_step(&label, *mu0, *mu1, *eta, &mut errs),
                MethodSpec::Nu { nu, gamma_scale, .. } => {
                    if !(*nu > 0.5) {
                        errs.push(format!("{label}: nu must exceed 1/2"));
                    }
                    if !(*gamma_scale > 0.0 && *gamma_scale < 1.0) {
                        errs.push(format!("{label}: gamma_scale must lie in (0, 1)"));
                    }
                }
                MethodSpec::Nesterov { alpha_shift, gamma_scale, .. } => {
                    if !(*alpha_shift >= 2.0) {
                        errs.push(format!("{label}: alpha_shift must be >= 2"));
                    }
                    if !(*gamma_scale > 0.0 && *gamma_scale < 1.0) {
                        errs.push(format!("{label}: gamma_scale must lie in (0, 1)"));
                    }
                }
            }
            if let Some(0) = match m {
                MethodSpec::Ahb { max_iter, .. }
                | MethodSpec::Landweber { max_iter, .. }
                | MethodSpec::Nu { max_iter, .. }
                | MethodSpec::Nesterov { max_iter, .. } => max_iter,
            } {
                errs.push(format!("{label}: max_iter must be positive"));
            }
        }
        if let Some(k) = self.curves.noisy_level {
            if k >= self.noise.levels.len() {
                errs.push(format!("curves.noisy_level {k} is out of range"));
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(HarnessError::Invalid(errs))
        }
    }
}

fn check_step(label: &str, mu0: f64, mu1: f64, eta: f64, errs: &mut Vec<String>) {
    if !(mu0 > 0.0) || !(mu1 > 0.0) {
        errs.push(format!("{label}: mu0 and mu1 must be positive"));
    }
    if !(0.0..1.0).contains(&eta) {
        errs.push(format!("{label}: eta must lie in [0, 1)"));
    }
}
