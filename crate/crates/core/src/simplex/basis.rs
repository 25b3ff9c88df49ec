use std::cmp::Ordering;

use super::{LinearProgram, VertexBasis};
use crate::numerics::vector::{dot, norm};
use crate::numerics::{Lu, Mat};
use crate::{Error, Result};

const FEAS_RTOL: f64 = 1e-9;
const RATIO_RTOL: f64 = 1e-9;
const BLOCK_RTOL: f64 = 1e-12;

/// `1e-9 * |a_i|`; multiply by `1 + |x|` at the point of use.
pub fn feasibility_tolerance(lp: &LinearProgram, i: usize) -> f64 {
    FEAS_RTOL * lp.row_norm(i).max(f64::MIN_POSITIVE)
}

/// Result of the ratio test along the edge that releases one tight row.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    /// Position (in the basis) of the released row.
    pub released: usize,
    pub direction: Vec<f64>,
    /// Blocking row, or `None` if the edge is an unbounded ray.
    pub entering: Option<usize>,
    pub length: f64,
}

impl Step {
    pub fn target(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.entering?;
        Some(
            x.iter()
                .zip(&self.direction)
                .map(|(xi, ri)| xi + self.length * ri)
                .collect(),
        )
    }
}

/// Working state of a basis: rows, `A_I^{-1}` and the basic solution.
#[derive(Clone, Debug)]
pub struct BasisState<'a> {
    lp: &'a LinearProgram,
    rows: Vec<usize>,
    inv: Mat,
    x: Vec<f64>,
}

impl<'a> BasisState<'a> {
    pub fn new(lp: &'a LinearProgram, rows: &[usize]) -> Result<Self> {
        let mut rows = rows.to_vec();
        rows.sort_unstable();
        let lu = Lu::factor(&lp.a().select_rows(&rows))?;
        let inv = lu.inverse();
        let bi: Vec<f64> = rows.iter().map(|&i| lp.b()[i]).collect();
        let x = inv.mul_vec(&bi)?;
        Ok(Self { lp, rows, inv, x })
    }

    pub fn from_vertex(lp: &'a LinearProgram, v: &VertexBasis) -> Result<Self> {
        v.validate(lp)?;
        Self::new(lp, &v.tight_rows)
    }

    pub fn lp(&self) -> &'a LinearProgram {
        self.lp
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn vertex(&self) -> VertexBasis {
        VertexBasis {
            tight_rows: self.rows.clone(),
            x: self.x.clone(),
        }
    }

    /// `y` with `A_Iᵀ y = c`; `y_p` belongs to row `rows[p]`.
    pub fn multipliers(&self, c: &[f64]) -> Vec<f64> {
        let d = self.rows.len();
        (0..d)
            .map(|p| (0..d).map(|l| self.inv[(l, p)] * c[l]).sum())
            .collect()
    }

    /// Multiplier scaled by the row norm, which makes the sign test
    /// independent of row scaling.
    pub fn is_improving(&self, y: &[f64], p: usize, c_norm: f64) -> bool {
        y[p] * self.lp.row_norm(self.rows[p]) < -1e-10 * c_norm.max(f64::MIN_POSITIVE)
    }

    /// Edge direction that keeps all tight rows but `rows[p]`, moving into
    /// the interior of that row's half-space.
    pub fn direction(&self, p: usize) -> Vec<f64> {
        (0..self.rows.len()).map(|l| -self.inv[(l, p)]).collect()
    }

    /// Ratio test with lexicographic tie-breaking (symbolic perturbation
    /// `b_i + δ^(i+1)`), so that degenerate vertices cannot cycle.
    pub fn step(&self, p: usize) -> Step {
        let r = self.direction(p);
        let rn = norm(&r);
        let mut best: Option<(usize, f64, f64)> = None;
        for j in 0..self.lp.num_rows() {
            if self.rows.binary_search(&j).is_ok() {
                continue;
            }
            let ar = dot(self.lp.row(j), &r);
            if ar <= BLOCK_RTOL * self.lp.row_norm(j) * rn {
                continue;
            }
            let ratio = self.lp.slack(j, &self.x).max(0.0) / ar;
            best = match best {
                None => Some((j, ratio, ar)),
                Some((k, rk, ak)) => {
                    let scale = 1.0 + ratio.abs().max(rk.abs());
                    let ord = if (ratio - rk).abs() <= RATIO_RTOL * scale {
                        self.lex_compare(j, ar, k, ak)
                    } else {
                        ratio.total_cmp(&rk)
                    };
                    if ord == Ordering::Less {
                        Some((j, ratio, ar))
                    } else {
                        Some((k, rk, ak))
                    }
                }
            };
        }
        Step {
            released: p,
            direction: r,
            entering: best.map(|b| b.0),
            length: best.map_or(f64::INFINITY, |b| b.1),
        }
    }

    /// Compare the perturbation parts of the ratios of rows `j` and `k`.
    fn lex_compare(&self, j: usize, aj: f64, k: usize, ak: f64) -> Ordering {
        let wj = self.row_times_inverse(j);
        let wk = self.row_times_inverse(k);
        let coef = |row: usize, w: &[f64], idx: usize| -> f64 {
            if idx == row {
                return 1.0;
            }
            match self.rows.binary_search(&idx) {
                Ok(p) => -w[p],
                Err(_) => 0.0,
            }
        };
        let mut idxs: Vec<usize> = self.rows.clone();
        idxs.push(j);
        idxs.push(k);
        idxs.sort_unstable();
        idxs.dedup();
        for idx in idxs {
            let cj = coef(j, &wj, idx) / aj;
            let ck = coef(k, &wk, idx) / ak;
            if (cj - ck).abs() > 1e-12 * (1.0 + cj.abs().max(ck.abs())) {
                return cj.total_cmp(&ck);
            }
        }
        j.cmp(&k)
    }

    fn row_times_inverse(&self, j: usize) -> Vec<f64> {
        let a = self.lp.row(j);
        let d = self.rows.len();
        (0..d).map(|p| (0..d).map(|l| a[l] * self.inv[(l, p)]).sum()).collect()
    }

    /// Replace `rows[step.released]` by the entering row.
    pub fn pivot(&mut self, step: &Step) -> Result<()> {
        let entering = step
            .entering
            .ok_or_else(|| Error::Internal("pivot along an unbounded ray".into()))?;
        let mut rows = self.rows.clone();
        rows[step.released] = entering;
        *self = Self::new(self.lp, &rows)?;
        Ok(())
    }
}
