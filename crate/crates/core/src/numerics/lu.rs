use super::matrix::Mat;
use crate::{Error, Result};

/// Relative pivot threshold below which a square matrix is treated as singular.
const SINGULAR_RTOL: f64 = 1e-12;

/// LU factorisation with partial pivoting, `PA = LU`.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Factor a square matrix. Fails with `RankDeficient` when a pivot falls
    /// below `1e-12 * max|a_ij|`.
    pub fn factor(a: &Mat) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let n = a.rows();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let threshold = SINGULAR_RTOL * a.max_abs();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if pmax <= threshold || pmax == 0.0 {
                return Err(Error::RankDeficient {
                    rank: k,
                    required: n,
                });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }
        Ok(Self { n, lu, perm, sign })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solve `Ax = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        x
    }

    /// Solve `Aᵀy = c`.
    pub fn solve_transpose(&self, c: &[f64]) -> Vec<f64> {
        let n = self.n;
        // Aᵀ = Uᵀ Lᵀ P, so solve Uᵀ w = c, Lᵀ v = w, then y = Pᵀ v.
        let mut w = c.to_vec();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[j * n + i] * w[j]).sum();
            w[i] = (w[i] - s) / self.lu[i * n + i];
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[j * n + i] * w[j]).sum();
            w[i] -= s;
        }
        let mut y = vec![0.0; n];
        for (k, &p) in self.perm.iter().enumerate() {
            y[p] = w[k];
        }
        y
    }

    pub fn inverse(&self) -> Mat {
        let n = self.n;
        let mut inv = Mat::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }

    pub fn det(&self) -> f64 {
        (0..self.n).map(|i| self.lu[i * self.n + i]).product::<f64>() * self.sign
    }
}

/// Numerical rank of a (possibly rectangular) matrix by Gaussian elimination
/// with full pivoting; entries below `rtol * max|a_ij|` count as zero.
pub(crate) fn numerical_rank(rows: &[Vec<f64>], rtol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let ncols = m[0].len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, x| a.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let tol = rtol * scale;
    let mut rank = 0;
    let mut used_cols = vec![false; ncols];
    for r in 0..m.len() {
        let mut best = (usize::MAX, usize::MAX, tol);
        for (i, row) in m.iter().enumerate().skip(r) {
            for (j, &v) in row.iter().enumerate() {
                if !used_cols[j] && v.abs() > best.2 {
                    best = (i, j, v.abs());
                }
            }
        }
        if best.0 == usize::MAX {
            break;
        }
        let (pi, pj, _) = best;
        m.swap(r, pi);
        used_cols[pj] = true;
        let pivot = m[r][pj];
        let prow = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[pj] / pivot;
            if f != 0.0 {
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}
