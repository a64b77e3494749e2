//! Desk-scale 2-D transmission tomography.
//!
//! The image occupies `[-cols/2, cols/2] × [-rows/2, rows/2]` with unit
//! pixels, row 0 at the top. Each row of the system matrix holds the exact
//! intersection lengths of one ray with the pixels it crosses.

use std::sync::Arc;

use super::fredholm::check_len;
use super::sparse::CsrMatrix;
use crate::error::{Error, Result};
use crate::problem::ForwardProblem;
use crate::regularizers::ImageDims;
use crate::space::GridVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// Parallel rays spanning the image diagonal.
    Parallel,
    /// Point source on a circle of twice the image half-diagonal.
    Fan,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Ray {
    pub origin: [f64; 2],
    pub dir: [f64; 2],
}

#[derive(Debug, Clone)]
pub struct TomoProblem {
    dims: ImageDims,
    angles_deg: Vec<f64>,
    n_rays: usize,
    geometry: Geometry,
    matrix: CsrMatrix,
    param_weights: Arc<[f64]>,
    data_weights: Arc<[f64]>,
}

/// Angles evenly spaced over `[1°, 360°]`.
fn projection_angles(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    (0..n).map(|k| 1.0 + 359.0 * k as f64 / (n - 1) as f64).collect()
}

pub(crate) fn rays(dims: ImageDims, angle_deg: f64, n_rays: usize, geometry: Geometry) -> Vec<Ray> {
    let half_diag = 0.5 * ((dims.rows * dims.rows + dims.cols * dims.cols) as f64).sqrt();
    let theta = angle_deg.to_radians();
    let (s, c) = theta.sin_cos();
    // cell-centred offsets in [-1, 1]
    let offsets = (0..n_rays).map(move |k| (2.0 * (k as f64 + 0.5) / n_rays as f64) - 1.0);
    match geometry {
        Geometry::Parallel => {
            let dir = [c, s];
            let normal = [-s, c];
            offsets
                .map(|o| {
                    let d = o * half_diag;
                    Ray {
                        origin: [d * normal[0] - 2.0 * half_diag * dir[0], d * normal[1] - 2.0 * half_diag * dir[1]],
                        dir,
                    }
                })
                .collect()
        }
        Geometry::Fan => {
            let radius = 2.0 * half_diag;
            let source = [radius * c, radius * s];
            let fan_half = (half_diag / radius).asin();
            offsets
                .map(|o| {
                    let psi = o * fan_half;
                    let (ps, pc) = psi.sin_cos();
                    // rotate the inward direction -(c, s) by psi
                    let dir = [-(c * pc - s * ps), -(s * pc + c * ps)];
                    Ray { origin: source, dir }
                })
                .collect()
        }
    }
}

/// Siddon-style traversal: returns `(pixel index, length)` pairs.
pub(crate) fn trace(dims: ImageDims, ray: &Ray) -> Vec<(usize, f64)> {
    let xmax = dims.cols as f64 / 2.0;
    let ymax = dims.rows as f64 / 2.0;
    let [ox, oy] = ray.origin;
    let [dx, dy] = ray.dir;

    let mut t_lo = f64::NEG_INFINITY;
    let mut t_hi = f64::INFINITY;
    for (o, d, lim) in [(ox, dx, xmax), (oy, dy, ymax)] {
        if d == 0.0 {
            if o < -lim || o > lim {
                return Vec::new();
            }
        } else {
            let t1 = (-lim - o) / d;
            let t2 = (lim - o) / d;
            t_lo = t_lo.max(t1.min(t2));
            t_hi = t_hi.min(t1.max(t2));
        }
    }
    if !(t_hi > t_lo) {
        return Vec::new();
    }

    let mut ts = vec![t_lo, t_hi];
    for (o, d, n, lim) in [(ox, dx, dims.cols, xmax), (oy, dy, dims.rows, ymax)] {
        if d == 0.0 {
            continue;
        }
        for k in 0..=n {
            let t = (k as f64 - lim - o) / d;
            if t > t_lo && t < t_hi {
                ts.push(t);
            }
        }
    }
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut out = Vec::with_capacity(ts.len());
    for w in ts.windows(2) {
        let len = w[1] - w[0];
        if len <= 1e-12 {
            continue;
        }
        let tm = 0.5 * (w[0] + w[1]);
        let x = ox + tm * dx;
        let y = oy + tm * dy;
        let j = ((x + xmax).floor() as isize).clamp(0, dims.cols as isize - 1) as usize;
        let i = ((ymax - y).floor() as isize).clamp(0, dims.rows as isize - 1) as usize;
        out.push((dims.idx(i, j), len));
    }
    out
}

/// Chord length of a ray through the image bounding box.
#[cfg(test)]
pub(crate) fn chord_length(dims: ImageDims, ray: &Ray) -> f64 {
    let xmax = dims.cols as f64 / 2.0;
    let ymax = dims.rows as f64 / 2.0;
    let mut t_lo = f64::NEG_INFINITY;
    let mut t_hi = f64::INFINITY;
    for (o, d, lim) in [(ray.origin[0], ray.dir[0], xmax), (ray.origin[1], ray.dir[1], ymax)] {
        if d == 0.0 {
            if o < -lim || o > lim {
                return 0.0;
            }
        } else {
            let t1 = (-lim - o) / d;
            let t2 = (lim - o) / d;
            t_lo = t_lo.max(t1.min(t2));
            t_hi = t_hi.min(t1.max(t2));
        }
    }
    (t_hi - t_lo).max(0.0)
}

pub fn build_tomo(
    rows: usize,
    cols: usize,
    n_angles: usize,
    n_rays: usize,
    geometry: Geometry,
) -> Result<TomoProblem> {
    if rows < 8 || cols < 8 {
        return Err(Error::Config(format!("image must be at least 8x8, got {rows}x{cols}")));
    }
    if n_angles == 0 || n_rays == 0 {
        return Err(Error::Config("need at least one angle and one ray".into()));
    }
    let dims = ImageDims::new(rows, cols);
    let angles_deg = projection_angles(n_angles);
    let mut rows_out = Vec::with_capacity(n_angles * n_rays);
    for a in &angles_deg {
        for ray in rays(dims, *a, n_rays, geometry) {
            rows_out.push(trace(dims, &ray));
        }
    }
    let matrix = CsrMatrix::from_rows(dims.len(), rows_out);
    Ok(TomoProblem {
        dims,
        angles_deg,
        n_rays,
        geometry,
        param_weights: vec![1.0; dims.len()].into(),
        data_weights: vec![1.0; matrix.nrows()].into(),
        matrix,
    })
}

impl TomoProblem {
    pub fn dims(&self) -> ImageDims {
        self.dims
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn angles_deg(&self) -> &[f64] {
        &self.angles_deg
    }

    pub fn n_rays(&self) -> usize {
        self.n_rays
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// Wraps an image (column-stacked) as a parameter-space vector.
    pub fn image(&self, values: Vec<f64>) -> Result<GridVector> {
        GridVector::new(values, Arc::clone(&self.param_weights))
    }
}

impl ForwardProblem for TomoProblem {
    fn name(&self) -> &str {
        "tomo"
    }

    fn apply(&self, x: &GridVector) -> Result<GridVector> {
        check_len(x, self.matrix.ncols())?;
        GridVector::new(self.matrix.mul_vec(x.values()), Arc::clone(&self.data_weights))
    }

    fn lin_apply(&self, _x: &GridVector, h: &GridVector) -> Result<GridVector> {
        self.apply(h)
    }

    fn lin_adjoint(&self, _x: &GridVector, w: &GridVector) -> Result<GridVector> {
        check_len(w, self.matrix.nrows())?;
        GridVector::new(self.matrix.mul_transpose_vec(w.values()), Arc::clone(&self.param_weights))
    }

    fn is_linear(&self) -> bool {
        true
    }

    fn param_zeros(&self) -> GridVector {
        GridVector::zeros(Arc::clone(&self.param_weights))
    }

    fn data_zeros(&self) -> GridVector {
        GridVector::zeros(Arc::clone(&self.data_weights))
    }
}
