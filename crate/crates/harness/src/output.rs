//! File outputs of an experiment. Everything except `timing.csv` is a pure
//! function of the config and seeds, so reruns reproduce it byte for byte.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ahb_core::solvers::{IterRow, RunRecord};
use image::GrayImage;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::experiment::{ExperimentReport, SummaryRow};

#[derive(Serialize)]
struct LogRow {
    n: usize,
    residual: f64,
    alpha: Option<f64>,
    beta: Option<f64>,
    gamma_tilde: Option<f64>,
    error: Option<f64>,
}

impl From<&IterRow> for LogRow {
    fn from(r: &IterRow) -> Self {
        Self {
            n: r.n,
            residual: r.residual_norm,
            alpha: r.alpha,
            beta: r.beta,
            gamma_tilde: r.gamma_tilde,
            error: r.truth_error,
        }
    }
}

#[derive(Serialize)]
struct TimingRow<'a> {
    method: &'a str,
    delta: f64,
    seed: u64,
    iterations: usize,
    seconds: String,
}

#[derive(Serialize)]
struct CurvePoint {
    n: usize,
    error: f64,
}

fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `(n, error)` series of a run; `None` when the run kept no truth errors.
fn curve(record: &RunRecord) -> Option<Vec<CurvePoint>> {
    record
        .rows
        .iter()
        .map(|r| r.truth_error.map(|error| CurvePoint { n: r.n, error }))
        .collect()
}

/// Writes all outputs under `dir`; returns the paths written.
pub fn write_outputs(
    cfg: &ExperimentConfig,
    report: &ExperimentReport,
    dir: &Path,
) -> Result<Vec<PathBuf>, HarnessError> {
    let mut written = Vec::new();
    fs::create_dir_all(dir.join("logs"))?;

    let cfg_path = dir.join("config.toml");
    fs::write(&cfg_path, cfg.to_toml())?;
    written.push(cfg_path);

    let summary = dir.join("summary.csv");
    write_csv(&summary, report.summary())?;
    written.push(summary);

    for o in &report.outcomes {
        let p = dir.join("logs").join(format!("{}.csv", o.stem()));
        write_csv(&p, o.record.rows.iter().map(LogRow::from))?;
        written.push(p);
    }

    let timing = dir.join("timing.csv");
    write_csv(
        &timing,
        report.outcomes.iter().map(|o| TimingRow {
            method: &o.label,
            delta: o.delta,
            seed: o.seed,
            iterations: o.record.iterations(),
            seconds: format!("{:.3}", o.record.elapsed),
        }),
    )?;
    written.push(timing);

    written.extend(write_curves(cfg, report, dir)?);
    if cfg.output.images {
        written.extend(write_images(report, dir)?);
    }
    if cfg.output.export_matrix {
        match report.instance.tomography_matrix() {
            Some(a) => {
                let p = dir.join("matrix.coo");
                let f = std::io::BufWriter::new(fs::File::create(&p)?);
                a.write_coo(f)?;
                written.push(p);
            }
            None => log::warn!("export_matrix is only available for tomography"),
        }
    }
    Ok(written)
}

fn write_curves(cfg: &ExperimentConfig, report: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let mut written = Vec::new();
    let curves = dir.join("curves");
    if let Some(level) = cfg.curves.noisy_level {
        fs::create_dir_all(&curves)?;
        for o in report.outcomes.iter().filter(|o| o.level == level && o.repeat == 0) {
            match curve(&o.record) {
                Some(points) => {
                    let p = curves.join(format!("noisy_{}.csv", o.label));
                    write_csv(&p, points)?;
                    written.push(p);
                }
                None => log::warn!("{}: no truth errors recorded, curve omitted", o.label),
            }
        }
    }
    for run in &report.exact_runs {
        fs::create_dir_all(&curves)?;
        match curve(&run.record) {
            Some(points) => {
                let p = curves.join(format!("exact_{}.csv", run.label));
                write_csv(&p, points)?;
                written.push(p);
            }
            None => log::warn!("{}: no truth errors recorded, curve omitted", run.label),
        }
    }
    Ok(written)
}

/// Grayscale map of `values` (column-stacked) onto `[lo, hi]`.
pub fn to_gray(values: &[f64], rows: usize, cols: usize, lo: f64, hi: f64) -> GrayImage {
    let span = if hi > lo { hi - lo } else { 1.0 };
    GrayImage::from_fn(cols as u32, rows as u32, |j, i| {
        let v = values[i as usize + j as usize * rows];
        let t = ((v - lo) / span).clamp(0.0, 1.0);
        image::Luma([(t * 255.0).round() as u8])
    })
}

/// Row-major CSV of a column-stacked image.
pub fn write_image_csv(path: &Path, values: &[f64], rows: usize, cols: usize) -> Result<(), HarnessError> {
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    for i in 0..rows {
        let line: Vec<String> = (0..cols).map(|j| values[i + j * rows].to_string()).collect();
        writeln!(f, "{}", line.join(","))?;
    }
    f.flush()?;
    Ok(())
}

fn write_images(report: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let Some((rows, cols)) = report.instance.image_dims() else {
        return Ok(Vec::new());
    };
    let images = dir.join("images");
    fs::create_dir_all(&images)?;
    let truth = report.instance.truth().values();
    // common scale taken from the truth so reconstructions are comparable
    let lo = truth.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = truth.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut written = Vec::new();
    let mut save = |stem: &str, values: &[f64]| -> Result<(), HarnessError> {
        let pgm = images.join(format!("{stem}.pgm"));
        to_gray(values, rows, cols, lo, hi)
            .save(&pgm)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", pgm.display())))?;
        let csv = images.join(format!("{stem}.csv"));
        write_image_csv(&csv, values, rows, cols)?;
        written.push(pgm);
        written.push(csv);
        Ok(())
    };
    save("truth", truth)?;
    for o in &report.outcomes {
        save(&o.stem(), o.x.values())?;
    }
    Ok(written)
}

/// Fixed-width results table: delta, method, iterations, time, error, stop.
pub fn format_table(rows: &[SummaryRow], timings: &[f64]) -> String {
    let mut s = format!(
        "{:>10}  {:<16} {:>10} {:>10} {:>12}  {}\n",
        "delta", "method", "iterations", "time (s)", "error", "stop"
    );
    for (r, t) in rows.iter().zip(timings) {
        let delta = r.delta_rel.unwrap_or(r.delta);
        let err = r.error.map_or("-".to_string(), |e| format!("{e:.4e}"));
        s.push_str(&format!(
            "{:>10}  {:<16} {:>10} {:>10.3} {:>12}  {}\n",
            format!("{delta:e}"),
            r.method,
            r.iterations,
            t,
            err,
            r.stop_reason
        ));
    }
    s
}
