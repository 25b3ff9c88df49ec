//! Singular values by one-sided (Hestenes) Jacobi rotations.
//!
//! Columns are rotated pairwise until every pair is numerically orthogonal,
//! `|<a_p, a_q>| <= 1e-14 * |a_p| |a_q|`. The relative test is stricter than an
//! absolute `1e-12 * |A|_F^2` test and is what keeps small singular values
//! accurate. Tall inputs are first reduced to their `R` factor by Householder
//! QR, which leaves the singular values unchanged.

use super::matrix::Mat;
use super::vector::dot;
use crate::{Error, Result};

const ORTHO_RTOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 80;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularValueReport {
    /// Descending, length `min(m, n)`.
    pub values: Vec<f64>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `lambda_max / lambda_min`, or `+inf` when `lambda_min == 0`.
    pub condition_number: f64,
}

impl SingularValueReport {
    fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let lambda_max = values[0];
        let lambda_min = *values.last().unwrap();
        let condition_number = if lambda_min > 0.0 {
            lambda_max / lambda_min
        } else {
            f64::INFINITY
        };
        Self {
            values,
            lambda_min,
            lambda_max,
            condition_number,
        }
    }
}

/// Singular values together with right singular vectors `V` (`n x n`,
/// columns ordered like `report.values` followed by any null directions).
#[derive(Clone, Debug)]
pub struct Svd {
    pub report: SingularValueReport,
    pub v: Mat,
    /// All `n` column norms in the same order as the columns of `v`.
    pub sigma_full: Vec<f64>,
}

pub fn singular_values(a: &Mat) -> Result<SingularValueReport> {
    let (m, n) = (a.rows(), a.cols());
    let (mut work, rows, cols) = if m >= n {
        if m > n {
            (householder_r(a), n, n)
        } else {
            (column_major(a), m, n)
        }
    } else {
        (column_major(&a.transpose()), n, m)
    };
    let norms = jacobi(&mut work, rows, cols, None)?;
    Ok(SingularValueReport::from_values(
        norms.into_iter().map(f64::sqrt).collect(),
    ))
}

/// One-sided Jacobi directly on the columns of `a`, accumulating `V`.
pub fn svd_right(a: &Mat) -> Result<Svd> {
    let (m, n) = (a.rows(), a.cols());
    let mut work = column_major(a);
    let mut v = vec![0.0; n * n];
    for j in 0..n {
        v[j * n + j] = 1.0;
    }
    let norms = jacobi(&mut work, m, n, Some(&mut v))?;
    let sigma_full: Vec<f64> = norms.iter().map(|x| x.sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma_full[j].total_cmp(&sigma_full[i]));
    let vm = Mat::from_fn(n, n, |i, k| v[order[k] * n + i])?;
    let sorted: Vec<f64> = order.iter().map(|&k| sigma_full[k]).collect();
    let report = SingularValueReport::from_values(sorted[..m.min(n)].to_vec());
    Ok(Svd {
        report,
        v: vm,
        sigma_full: sorted,
    })
}

fn column_major(a: &Mat) -> Vec<f64> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = vec![0.0; m * n];
    for i in 0..m {
        for j in 0..n {
            w[j * m + i] = a[(i, j)];
        }
    }
    w
}

/// Upper-triangular `R` of a Householder QR of a tall `a`, column-major `n x n`.
fn householder_r(a: &Mat) -> Vec<f64> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = column_major(a);
    for k in 0..n {
        let col = &w[k * m..(k + 1) * m];
        let alpha = dot(&col[k..], &col[k..]).sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = col[k];
        let beta = if x0 >= 0.0 { -alpha } else { alpha };
        let mut v: Vec<f64> = col[k..].to_vec();
        v[0] -= beta;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..n {
            let cj = &mut w[j * m + k..(j + 1) * m];
            let f = 2.0 * dot(&v, cj) / vnorm2;
            for (c, vi) in cj.iter_mut().zip(&v) {
                *c -= f * vi;
            }
        }
    }
    let mut r = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..=j {
            r[j * n + i] = w[j * m + i];
        }
    }
    r
}

/// Orthogonalise the `cols` columns (each of length `rows`) of the
/// column-major buffer in place. Returns squared column norms.
fn jacobi(w: &mut [f64], rows: usize, cols: usize, mut v: Option<&mut Vec<f64>>) -> Result<Vec<f64>> {
    let mut norms: Vec<f64> = (0..cols)
        .map(|j| {
            let c = &w[j * rows..(j + 1) * rows];
            dot(c, c)
        })
        .collect();
    let total: f64 = norms.iter().sum();
    if total == 0.0 {
        return Ok(norms);
    }
    // Columns this small carry no information at double precision.
    let negligible = total * f64::EPSILON * f64::EPSILON * 1e-4;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols.saturating_sub(1) {
            for q in p + 1..cols {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let (cp, cq) = column_pair(w, rows, p, q);
                let gamma = dot(cp, cq);
                if gamma.abs() <= ORTHO_RTOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(cp, cq, c, s);
                norms[p] = alpha - t * gamma;
                norms[q] = beta + t * gamma;
                if let Some(v) = v.as_deref_mut() {
                    let (vp, vq) = column_pair(v, cols, p, q);
                    rotate(vp, vq, c, s);
                }
            }
        }
        // Refresh to stop drift in the running norm updates.
        for (j, nj) in norms.iter_mut().enumerate() {
            let c = &w[j * rows..(j + 1) * rows];
            *nj = dot(c, c);
        }
        if !rotated {
            return Ok(norms);
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

#[inline]
fn column_pair(w: &mut [f64], rows: usize, p: usize, q: usize) -> (&mut [f64], &mut [f64]) {
    debug_assert!(p < q);
    let (left, right) = w.split_at_mut(q * rows);
    (&mut left[p * rows..(p + 1) * rows], &mut right[..rows])
}

#[inline]
fn rotate(cp: &mut [f64], cq: &mut [f64], c: f64, s: f64) {
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}
