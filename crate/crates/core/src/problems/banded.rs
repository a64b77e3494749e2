use crate::error::{Error, Result};

/// Cholesky factor `A = L Lᵀ` of a symmetric positive definite band matrix.
///
/// Row `i` of `L` is stored densely for columns `i - bw ..= i` (entries left
/// of column 0 are zero padding).
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    n: usize,
    bw: usize,
    rows: Vec<f64>,
}

impl BandedCholesky {
    /// Factors the matrix whose lower band is given by `entry(i, j)` for
    /// `i - bw <= j <= i`.
    pub fn factor(n: usize, bw: usize, entry: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let w = bw + 1;
        let mut rows = vec![0.0; n * w];
        for i in 0..n {
            let first = i.saturating_sub(bw);
            for j in first..=i {
                // L[i][j] = (A[i][j] - Σ_{p<j} L[i][p] L[j][p]) / L[j][j]
                let p0 = first.max(j.saturating_sub(bw));
                let ri = &rows[i * w..(i + 1) * w];
                let rj = &rows[j * w..(j + 1) * w];
                let s = entry(i, j)
                    - dot(&ri[p0 + bw - i..j + bw - i], &rj[p0 + bw - j..bw]);
                let val = if i == j {
                    if !(s > 0.0) {
                        return Err(Error::Solve(format!(
                            "matrix not positive definite at pivot {i} ({s:e})"
                        )));
                    }
                    s.sqrt()
                } else {
                    s / rj[bw]
                };
                rows[i * w + j + bw - i] = val;
            }
        }
        Ok(Self { n, bw, rows })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn l(&self, i: usize, j: usize) -> f64 {
        self.rows[i * (self.bw + 1) + j + self.bw - i]
    }

    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let bw = self.bw;
        let mut z = b.to_vec();
        for i in 0..self.n {
            let mut s = z[i];
            for p in i.saturating_sub(bw)..i {
                s -= self.l(i, p) * z[p];
            }
            z[i] = s / self.l(i, i);
        }
        for i in (0..self.n).rev() {
            let mut s = z[i];
            for k in i + 1..(i + bw + 1).min(self.n) {
                s -= self.l(k, i) * z[k];
            }
            z[i] = s / self.l(i, i);
        }
        z
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        for k in 0..4 {
            acc[k] += a[4 * c + k] * b[4 * c + k];
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for k in 4 * chunks..a.len() {
        s += a[k] * b[k];
    }
    s
}
