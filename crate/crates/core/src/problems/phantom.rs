//! Modified Shepp-Logan head phantom.

use crate::regularizers::ImageDims;

/// Ellipse with additive intensity, semi-axes `(a, b)` along x and y,
/// center `(x0, y0)` in `[-1, 1]²` and rotation `phi` in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub intensity: f64,
    pub a: f64,
    pub b: f64,
    pub x0: f64,
    pub y0: f64,
    pub phi: f64,
}

const fn e(intensity: f64, a: f64, b: f64, x0: f64, y0: f64, phi: f64) -> Ellipse {
    Ellipse { intensity, a, b, x0, y0, phi }
}

/// Toft's contrast-enhanced variant of the Shepp-Logan table.
pub const MODIFIED_SHEPP_LOGAN: [Ellipse; 10] = [
    e(1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    e(-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0),
    e(-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0),
    e(-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0),
    e(0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0),
    e(0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0),
    e(0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0),
    e(0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0),
    e(0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0),
    e(0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0),
];

impl Ellipse {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (s, c) = self.phi.to_radians().sin_cos();
        let dx = x - self.x0;
        let dy = y - self.y0;
        let u = dx * c + dy * s;
        let v = dy * c - dx * s;
        (u * u) / (self.a * self.a) + (v * v) / (self.b * self.b) <= 1.0
    }
}

/// Rasterizes the phantom on a `rows × cols` grid, column-stacked.
///
/// Pixel centers span `[-1, 1]` in both directions; row 0 is the top edge.
pub fn shepp_logan(rows: usize, cols: usize) -> Vec<f64> {
    assert!(rows >= 2 && cols >= 2, "phantom needs at least 2x2 pixels");
    let dims = ImageDims::new(rows, cols);
    let mut img = vec![0.0; dims.len()];
    let ys = (rows - 1) as f64 / 2.0;
    let xs = (cols - 1) as f64 / 2.0;
    for j in 0..cols {
        let x = (j as f64 - xs) / xs;
        for i in 0..rows {
            let y = (ys - i as f64) / ys;
            let v: f64 = MODIFIED_SHEPP_LOGAN
                .iter()
                .filter(|el| el.contains(x, y))
                .map(|el| el.intensity)
                .sum();
            img[dims.idx(i, j)] = v;
        }
    }
    img
}
