//! Periodic forward-difference gradient on `rows × cols` images.
//!
//! Images are stored column-stacked: pixel `(i, j)` lives at `i + j * rows`.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageDims {
    pub rows: usize,
    pub cols: usize,
}

impl ImageDims {
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "image dimensions must be positive");
        Self { rows, cols }
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i + j * self.rows
    }
}

/// Pair `(∇₁x, ∇₂x)` of row- and column-direction differences.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub dims: ImageDims,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl GradientField {
    pub fn zeros(dims: ImageDims) -> Self {
        Self {
            dims,
            u: vec![0.0; dims.len()],
            v: vec![0.0; dims.len()],
        }
    }

    pub fn inner(&self, other: &GradientField) -> f64 {
        self.u
            .iter()
            .zip(&other.u)
            .chain(self.v.iter().zip(&other.v))
            .map(|(a, b)| a * b)
            .sum()
    }
}

pub fn discrete_gradient(x: &[f64], dims: ImageDims) -> GradientField {
    assert_eq!(x.len(), dims.len());
    let mut g = GradientField::zeros(dims);
    gradient_into(x, dims, &mut g.u, &mut g.v);
    g
}

pub(crate) fn gradient_into(x: &[f64], dims: ImageDims, u: &mut [f64], v: &mut [f64]) {
    let (rows, cols) = (dims.rows, dims.cols);
    for j in 0..cols {
        let jn = if j + 1 == cols { 0 } else { j + 1 };
        for i in 0..rows {
            let inext = if i + 1 == rows { 0 } else { i + 1 };
            let k = i + j * rows;
            u[k] = x[inext + j * rows] - x[k];
            v[k] = x[i + jn * rows] - x[k];
        }
    }
}

/// Negative adjoint of [`discrete_gradient`] under the Euclidean inner product.
pub fn discrete_divergence(g: &GradientField) -> Vec<f64> {
    let mut out = vec![0.0; g.dims.len()];
    divergence_into(&g.u, &g.v, g.dims, &mut out);
    out
}

pub(crate) fn divergence_into(u: &[f64], v: &[f64], dims: ImageDims, out: &mut [f64]) {
    let (rows, cols) = (dims.rows, dims.cols);
    for j in 0..cols {
        let jp = if j == 0 { cols - 1 } else { j - 1 };
        for i in 0..rows {
            let ip = if i == 0 { rows - 1 } else { i - 1 };
            let k = i + j * rows;
            out[k] = u[k] - u[ip + j * rows] + v[k] - v[i + jp * rows];
        }
    }
}

/// Isotropic total variation `Σ sqrt((∇₁x)² + (∇₂x)²)`.
pub fn tv_value(x: &[f64], dims: ImageDims) -> f64 {
    let g = discrete_gradient(x, dims);
    g.u.iter().zip(&g.v).map(|(a, b)| a.hypot(*b)).sum()
}
