//! Brute-force facet enumeration over `d`-subsets of hull generators.

use std::collections::HashSet;

use super::VPolytope;
use crate::numerics::numerical_rank;
use crate::numerics::vector::{self, dot};
use crate::{Error, Result};

pub const DEFAULT_FACET_BUDGET: u128 = 1_000_000;

/// Relative tolerance of the one-sidedness test, scaled by `max(1, max|g|)`.
const SIDE_RTOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    /// Sorted generator indices lying on the hyperplane.
    pub indices: Vec<usize>,
    /// Outward unit normal.
    pub normal: Vec<f64>,
    /// `<normal, g> <= offset` for every generator `g`.
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacetList {
    pub facets: Vec<Facet>,
    /// Generators the index sets refer to (see [`VPolytope::generators`]).
    pub generators: Vec<Vec<f64>>,
    pub tolerance: f64,
}

impl FacetList {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Smallest facet offset: the radius of the largest origin-centred ball
    /// inside the hull, or a non-positive number when 0 is not interior.
    pub fn origin_depth(&self) -> f64 {
        self.facets
            .iter()
            .map(|f| f.offset)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains_origin_strictly(&self) -> bool {
        self.origin_depth() > self.tolerance
    }

    /// Largest facet violation `max(<h, x> - offset)`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        self.facets
            .iter()
            .map(|f| dot(&f.normal, x) - f.offset)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn enumerate_facets(k: &VPolytope) -> Result<FacetList> {
    enumerate_facets_with_budget(k, DEFAULT_FACET_BUDGET)
}

/// Every hyperplane through `d` affinely independent generators that leaves
/// all generators on one side, emitted once with all generators it touches.
pub fn enumerate_facets_with_budget(k: &VPolytope, budget: u128) -> Result<FacetList> {
    let gens = k.generators();
    let d = k.dim();
    let count = gens.len();
    let needed = binomial(count, d);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let diffs: Vec<Vec<f64>> = gens[1..].iter().map(|g| vector::sub(g, &gens[0])).collect();
    let rank = numerical_rank(&diffs, 1e-10);
    if rank < d {
        return Err(Error::RankDeficient { rank, required: d });
    }
    let scale = gens.iter().map(|g| vector::norm(g)).fold(1.0, f64::max);
    let tol = SIDE_RTOL * scale;

    let mut facets = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut subset: Vec<usize> = (0..d).collect();
    let mut normal = vec![0.0; d];
    let mut scratch = Vec::with_capacity(d * d);
    // Generator that stopped the previous scan; testing it first prunes most
    // non-facet subsets after one or two dot products.
    let mut witness = 0usize;
    loop {
        if hyperplane_normal(&gens, &subset, &mut normal, &mut scratch) {
            let offset = dot(&normal, &gens[subset[0]]);
            if let Some(sign) = one_sided(&gens, &normal, offset, tol, &mut witness) {
                let normal: Vec<f64> = normal.iter().map(|x| x * sign).collect();
                let offset = offset * sign;
                let indices: Vec<usize> = (0..count)
                    .filter(|&j| (dot(&normal, &gens[j]) - offset).abs() <= tol)
                    .collect();
                let fresh = indices.len() == d || seen.insert(indices.clone());
                if fresh {
                    facets.push(Facet {
                        indices,
                        normal,
                        offset,
                    });
                }
            }
        }
        if !next_combination(&mut subset, count) {
            break;
        }
    }
    Ok(FacetList {
        facets,
        generators: gens,
        tolerance: tol,
    })
}

/// `Some(+1.0)` if every generator satisfies `<h,g> <= c + tol`, `Some(-1.0)`
/// if every generator satisfies `>= c - tol`, `None` otherwise.
fn one_sided(gens: &[Vec<f64>], h: &[f64], c: f64, tol: f64, witness: &mut usize) -> Option<f64> {
    let (mut above, mut below) = (false, false);
    let mut check = |j: usize| {
        let s = dot(h, &gens[j]) - c;
        if s > tol {
            above = true;
        } else if s < -tol {
            below = true;
        }
        above && below
    };
    if *witness < gens.len() && check(*witness) {
        return None;
    }
    for j in 0..gens.len() {
        if check(j) {
            *witness = j;
            return None;
        }
    }
    match (above, below) {
        (true, false) => Some(-1.0),
        _ => Some(1.0),
    }
}

/// Unit normal of the affine hull of `gens[subset]`; false when the points are
/// affinely dependent.
fn hyperplane_normal(gens: &[Vec<f64>], subset: &[usize], out: &mut [f64], scratch: &mut Vec<f64>) -> bool {
    let d = out.len();
    let p0 = &gens[subset[0]];
    if d == 1 {
        out[0] = 1.0;
        return true;
    }
    if d == 2 {
        let p1 = &gens[subset[1]];
        let (dx, dy) = (p1[0] - p0[0], p1[1] - p0[1]);
        let len = dx.hypot(dy);
        if len <= 1e-12 {
            return false;
        }
        out[0] = -dy / len;
        out[1] = dx / len;
        return true;
    }
    if d == 3 {
        let (p1, p2) = (&gens[subset[1]], &gens[subset[2]]);
        let a = [p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]];
        let b = [p2[0] - p0[0], p2[1] - p0[1], p2[2] - p0[2]];
        let h = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let len = (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt();
        let na = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        let nb = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
        if len <= 1e-12 * na * nb || len == 0.0 {
            return false;
        }
        out.iter_mut().zip(h).for_each(|(o, x)| *o = x / len);
        return true;
    }
    // General d: null vector of the (d-1) x d difference matrix by
    // elimination with full pivoting.
    let rows = d - 1;
    scratch.clear();
    for &i in &subset[1..] {
        scratch.extend(gens[i].iter().zip(p0).map(|(a, b)| a - b));
    }
    let scale = scratch.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return false;
    }
    let mut col_of_row = vec![0usize; rows];
    let mut pivot_col = vec![false; d];
    for r in 0..rows {
        let mut best = (r, usize::MAX, 1e-12 * scale);
        for i in r..rows {
            for j in 0..d {
                let v = scratch[i * d + j].abs();
                if !pivot_col[j] && v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.1 == usize::MAX {
            return false;
        }
        let (pi, pj, _) = best;
        for j in 0..d {
            scratch.swap(r * d + j, pi * d + j);
        }
        pivot_col[pj] = true;
        col_of_row[r] = pj;
        let pv = scratch[r * d + pj];
        for i in 0..rows {
            if i != r {
                let f = scratch[i * d + pj] / pv;
                if f != 0.0 {
                    for j in 0..d {
                        scratch[i * d + j] -= f * scratch[r * d + j];
                    }
                }
            }
        }
    }
    let free = pivot_col.iter().position(|&p| !p).expect("one free column");
    out.iter_mut().for_each(|x| *x = 0.0);
    out[free] = 1.0;
    for r in 0..rows {
        let pj = col_of_row[r];
        out[pj] = -scratch[r * d + free] / scratch[r * d + pj];
    }
    let len = vector::norm(out);
    out.iter_mut().for_each(|x| *x /= len);
    true
}

/// Advance a sorted `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
