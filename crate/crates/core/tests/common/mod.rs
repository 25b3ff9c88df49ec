#![allow(dead_code)]

//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's linear algebra.

use rand::Rng;
use rand_distr::StandardNormal;

/// Gaussian elimination with partial pivoting; `None` if (near) singular.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, &bi)| {
        let mut r = r.clone();
        r.push(bi);
        r
    }).collect();
    let scale = a.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs())).max(1e-300);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-10 * scale {
            return None;
        }
        m.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..=n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r][c] * x[c]).sum();
        x[r] = (m[r][n] - s) / m[r][r];
    }
    Some(x)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// All k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Distinct vertices of `{x : <a_i,x> <= b_i}` by exhaustive basis enumeration.
pub fn brute_vertices(rows: &[Vec<f64>], b: &[f64]) -> Vec<Vec<f64>> {
    let d = rows[0].len();
    let mut out: Vec<Vec<f64>> = Vec::new();
    for s in subsets(rows.len(), d) {
        let a: Vec<Vec<f64>> = s.iter().map(|&i| rows[i].clone()).collect();
        let rhs: Vec<f64> = s.iter().map(|&i| b[i]).collect();
        let Some(x) = solve(&a, &rhs) else { continue };
        let feasible = rows
            .iter()
            .zip(b)
            .all(|(r, &bi)| dot(r, &x) <= bi + 1e-9 * (1.0 + norm(r)));
        if feasible && !out.iter().any(|v| dist(v, &x) <= 1e-9) {
            out.push(x);
        }
    }
    out
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn gaussian_vec<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn unit_vec<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    let g = gaussian_vec(rng, d);
    let r = norm(&g);
    g.iter().map(|v| v / r).collect()
}

/// Rows `n` Gaussian points around unit centers, resampled until the origin
/// is strictly inside their hull (checked by the brute-force vertex oracle:
/// the polar is bounded iff every direction has a row with positive inner
/// product, tested on the vertices of the polar instead).
pub fn interior_points<R: Rng>(rng: &mut R, n: usize, d: usize, sigma: f64) -> Vec<Vec<f64>> {
    loop {
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let c = unit_vec(rng, d);
                let g = gaussian_vec(rng, d);
                c.iter().zip(&g).map(|(a, b)| a + sigma * b).collect()
            })
            .collect();
        if origin_depth(&pts) > 1e-3 {
            return pts;
        }
    }
}

/// Largest `r` such that the ball of radius `r` about 0 lies in conv(pts),
/// or a non-positive value if 0 is not interior. Brute force over facets.
pub fn origin_depth(pts: &[Vec<f64>]) -> f64 {
    let d = pts[0].len();
    let mut depth = f64::INFINITY;
    let mut found = false;
    for s in subsets(pts.len(), d) {
        // Hyperplane <h, x> = 1 through the d points (0 must not lie on it).
        let a: Vec<Vec<f64>> = s.iter().map(|&i| pts[i].clone()).collect();
        let Some(h) = solve(&a, &vec![1.0; d]) else {
            return 0.0;
        };
        let side: Vec<f64> = pts.iter().map(|p| dot(&h, p) - 1.0).collect();
        if side.iter().all(|&v| v <= 1e-9) {
            found = true;
            depth = depth.min(1.0 / norm(&h));
        } else if side.iter().all(|&v| v >= -1e-9) {
            // All points beyond the plane: 0 is outside the hull.
            return 0.0;
        }
    }
    if found {
        depth
    } else {
        0.0
    }
}
