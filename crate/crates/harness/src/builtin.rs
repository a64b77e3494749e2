//! Built-in configurations for the three result tables.

use std::path::PathBuf;

use crate::config::*;

/// Fredholm example: four methods, five absolute noise levels.
pub fn table1() -> ExperimentConfig {
    let tau = 1.01;
    ExperimentConfig {
        name: "table1".into(),
        problem: ProblemSpec::Fredholm { nodes: 1000 },
        regularizer: RegularizerSpec::Quadratic,
        noise: NoiseSpec {
            kind: NoiseKind::Absolute,
            levels: vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5],
            seed: 8,
            repeats: 1,
        },
        methods: vec![
            MethodSpec::Landweber {
                label: None,
                tau,
                mu0: 1.0,
                mu1: 1.0,
                eta: 0.0,
                step: StepSpec::Constant,
                norm_bound: None,
                max_iter: None,
            },
            MethodSpec::Nu { label: None, tau, nu: 3.0, gamma_scale: 0.99, max_iter: None },
            MethodSpec::Nesterov { label: None, tau, alpha_shift: 3.0, gamma_scale: 0.99, max_iter: None },
            MethodSpec::Ahb {
                label: None,
                tau,
                beta_cap: f64::INFINITY,
                mu0: 0.99 * (2.0 - 2.0 / tau),
                mu1: 1.0,
                eta: 0.0,
                step: StepSpec::Constant,
                norm_bound: None,
                max_iter: None,
            },
        ],
        output: OutputSpec { dir: PathBuf::from("out/table1"), ..OutputSpec::default() },
        curves: CurveSpec { noisy_level: Some(2), exact_data_iters: 10_000 },
    }
}

fn adaptive_trio(tau: f64, mu0: f64, mu1: f64, eta: f64) -> Vec<MethodSpec> {
    let ahb = |label: &str, beta_cap: f64| MethodSpec::Ahb {
        label: Some(label.into()),
        tau,
        beta_cap,
        mu0,
        mu1,
        eta,
        step: StepSpec::Adaptive,
        norm_bound: None,
        max_iter: None,
    };
    vec![
        MethodSpec::Landweber {
            label: None,
            tau,
            mu0,
            mu1,
            eta,
            step: StepSpec::Adaptive,
            norm_bound: None,
            max_iter: None,
        },
        ahb("ahb-0.99", 0.99),
        ahb("ahb-inf", f64::INFINITY),
    ]
}

/// Desk-scale tomography: 64×64 phantom, 30 angles, 95 parallel rays.
pub fn table2() -> ExperimentConfig {
    let (tau, kappa) = (1.05, 1.0);
    ExperimentConfig {
        name: "table2".into(),
        problem: ProblemSpec::Tomography { rows: 64, cols: 64, angles: 30, rays: 95, geometry: GeometrySpec::Parallel },
        regularizer: RegularizerSpec::Tv { kappa, pdhg_iters: 70, tv_units: TvUnits::Pixel, warm_start: true },
        noise: NoiseSpec { kind: NoiseKind::Relative, levels: vec![0.05, 0.01], seed: 1, repeats: 1 },
        methods: adaptive_trio(tau, 0.99 * (2.0 - 2.0 / tau) / kappa, 100.0, 0.0),
        output: OutputSpec { dir: PathBuf::from("out/table2"), ..OutputSpec::default() },
        curves: CurveSpec { noisy_level: Some(1), exact_data_iters: 0 },
    }
}

/// Elliptic parameter identification on a 64×64 interior grid.
pub fn table3() -> ExperimentConfig {
    let (tau, eta, kappa) = (1.05, 0.01, 10.0);
    ExperimentConfig {
        name: "table3".into(),
        problem: ProblemSpec::Elliptic { grid: 64 },
        regularizer: RegularizerSpec::Tv { kappa, pdhg_iters: 200, tv_units: TvUnits::Pixel, warm_start: true },
        noise: NoiseSpec {
            kind: NoiseKind::Absolute,
            levels: vec![5e-3, 1e-3, 5e-4, 1e-4, 5e-5],
            seed: 1,
            repeats: 1,
        },
        methods: adaptive_trio(tau, 1.96 * (1.0 - eta - (1.0 + eta) / tau) / kappa, 80.0, eta),
        output: OutputSpec { dir: PathBuf::from("out/table3"), ..OutputSpec::default() },
        curves: CurveSpec { noisy_level: Some(1), exact_data_iters: 0 },
    }
}
