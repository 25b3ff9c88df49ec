//! Planar sections `K ∩ E`.
//!
//! `K` is the intersection of its facet half-spaces, so `K ∩ E` is the
//! intersection of the half-planes `{(s,t) : s<h,u> + t<h,v> <= c}` in the
//! `(u, v)` frame. The polygon is obtained by clipping a bounding square by
//! each of them and then cleaning up near-coincident vertices.

use super::facets::{enumerate_facets_with_budget, DEFAULT_FACET_BUDGET};
use super::{Plane, Polygon2D, VPolytope};
use crate::numerics::vector::{axpy, dot, norm, scale, sub};
use crate::{Error, Result};

/// Vertices closer than this are merged.
pub const MERGE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SectionDiagnostics {
    /// Vertices merged with a neighbour (near-degenerate corners).
    pub merged_vertices: usize,
    /// Vertices dropped because their turn was numerically flat.
    pub collinear_dropped: usize,
    /// The plane only touches `K` (the section collapsed to a point or segment).
    pub touching: bool,
}

impl SectionDiagnostics {
    pub fn is_degenerate(&self) -> bool {
        self.merged_vertices > 0 || self.collinear_dropped > 0 || self.touching
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub polygon: Polygon2D,
    pub diagnostics: SectionDiagnostics,
    pub facet_count: usize,
}

impl Section {
    pub fn edge_count(&self) -> usize {
        self.polygon.edge_count()
    }
}

pub fn section_polygon(k: &VPolytope, plane: &Plane) -> Result<Section> {
    section_polygon_with_budget(k, plane, DEFAULT_FACET_BUDGET)
}

pub fn section_polygon_with_budget(k: &VPolytope, plane: &Plane, budget: u128) -> Result<Section> {
    if plane.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: plane.dim(),
        });
    }
    let gens = k.generators();
    let radius = gens.iter().map(|g| norm(g)).fold(0.0, f64::max);
    let box_r = 2.0 * radius + 1.0;
    let hull = affine_basis(&gens, 1e-10 * radius.max(1.0));
    let mut diagnostics = SectionDiagnostics::default();
    if hull.len() == k.dim() {
        let facets = enumerate_facets_with_budget(k, budget)?;
        let halfplanes: Vec<[f64; 3]> = facets
            .facets
            .iter()
            .map(|f| [dot(&f.normal, plane.u()), dot(&f.normal, plane.v()), f.offset])
            .collect();
        let polygon = clean(clip_box(&halfplanes, box_r), &mut diagnostics);
        if !polygon.vertices.is_empty() && polygon.vertices.len() < 3 {
            diagnostics.touching = true;
        }
        return Ok(Section {
            polygon,
            diagnostics,
            facet_count: facets.len(),
        });
    }
    flat_section(&gens, &hull, plane, box_r, budget)
}

/// Orthonormal basis of the directions `g - g_0`.
fn affine_basis(gens: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let p0 = &gens[0];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for g in &gens[1..] {
        let mut r = sub(g, p0);
        for _ in 0..2 {
            for w in &basis {
                let c = dot(w, &r);
                axpy(-c, w, &mut r);
            }
        }
        let len = norm(&r);
        if len > tol {
            basis.push(scale(&r, 1.0 / len));
        }
    }
    basis
}

/// `K` spans a proper affine subspace `p_0 + span(W)`: work in `W`
/// coordinates, where `K` is full-dimensional, and intersect with the part of
/// `E` inside the subspace (all of `E`, a line, a point or nothing).
fn flat_section(gens: &[Vec<f64>], w: &[Vec<f64>], plane: &Plane, box_r: f64, budget: u128) -> Result<Section> {
    let p0 = &gens[0];
    let to_local = |x: &[f64]| -> Vec<f64> { w.iter().map(|wi| dot(wi, x)).collect() };
    let off_hull = |x: &[f64]| -> Vec<f64> {
        let mut r = x.to_vec();
        for wi in w {
            axpy(-dot(wi, x), wi, &mut r);
        }
        r
    };
    let q: Vec<Vec<f64>> = gens.iter().map(|g| to_local(&sub(g, p0))).collect();
    let local: Vec<(Vec<f64>, f64)> = match w.len() {
        0 => Vec::new(),
        1 => {
            let lo = q.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
            let hi = q.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max);
            vec![(vec![1.0], hi), (vec![-1.0], -lo)]
        }
        _ => enumerate_facets_with_budget(&VPolytope::new(q, false)?, budget)?
            .facets
            .into_iter()
            .map(|f| (f.normal, f.offset))
            .collect(),
    };
    // y = s u' + t v' - q0 in local coordinates.
    let (u_l, v_l, q0) = (to_local(plane.u()), to_local(plane.v()), to_local(p0));
    let halfplanes: Vec<[f64; 3]> = local
        .iter()
        .map(|(n, c)| [dot(n, &u_l), dot(n, &v_l), c + dot(n, &q0)])
        .collect();

    let (ru, rv, r0) = (off_hull(plane.u()), off_hull(plane.v()), off_hull(p0));
    let g = [dot(&ru, &ru), dot(&ru, &rv), dot(&rv, &rv)];
    let rhs = [dot(&ru, &r0), dot(&rv, &r0)];
    // Eigen-decomposition of the 2x2 Gram matrix.
    let mean = (g[0] + g[2]) / 2.0;
    let gap = ((g[0] - g[2]) / 2.0).hypot(g[1]);
    let (big, small) = (mean + gap, mean - gap);
    let e_big = if g[1] != 0.0 {
        unit2([big - g[2], g[1]])
    } else if g[0] >= g[2] {
        [1.0, 0.0]
    } else {
        [0.0, 1.0]
    };
    let e_small = [-e_big[1], e_big[0]];
    let tol = 1e-10;
    let consistent = |s: f64, t: f64| {
        let r: Vec<f64> = (0..ru.len()).map(|i| s * ru[i] + t * rv[i] - r0[i]).collect();
        norm(&r) <= 1e-9 * (1.0 + norm(p0))
    };
    let slack = |p: [f64; 2], h: &[f64; 3]| h[0] * p[0] + h[1] * p[1] - h[2];
    let side_tol = 1e-9 * box_r;

    let mut diagnostics = SectionDiagnostics::default();
    let mut vertices: Vec<[f64; 2]> = Vec::new();
    if big <= tol {
        // E lies in the affine hull.
        if consistent(0.0, 0.0) {
            let polygon = clean(clip_box(&halfplanes, box_r), &mut diagnostics);
            if !polygon.vertices.is_empty() && polygon.vertices.len() < 3 {
                diagnostics.touching = true;
            }
            return Ok(Section {
                polygon,
                diagnostics,
                facet_count: halfplanes.len(),
            });
        }
    } else if small <= tol {
        // The hull meets E in a line: base + λ·e_small.
        let c = (e_big[0] * rhs[0] + e_big[1] * rhs[1]) / big;
        let base = [c * e_big[0], c * e_big[1]];
        if consistent(base[0], base[1]) {
            let (mut lo, mut hi) = (-box_r, box_r);
            for h in &halfplanes {
                let a = h[0] * e_small[0] + h[1] * e_small[1];
                let r = -slack(base, h);
                if a.abs() <= 1e-14 {
                    if r < -side_tol {
                        lo = f64::INFINITY;
                    }
                } else if a > 0.0 {
                    hi = hi.min(r / a);
                } else {
                    lo = lo.max(r / a);
                }
            }
            if lo <= hi + side_tol {
                let at = |l: f64| [base[0] + l * e_small[0], base[1] + l * e_small[1]];
                vertices.push(at(lo.min(hi)));
                if hi - lo > MERGE_TOL {
                    vertices.push(at(hi));
                }
            }
        }
    } else {
        let det = g[0] * g[2] - g[1] * g[1];
        let s = (g[2] * rhs[0] - g[1] * rhs[1]) / det;
        let t = (g[0] * rhs[1] - g[1] * rhs[0]) / det;
        if consistent(s, t) && halfplanes.iter().all(|h| slack([s, t], h) <= side_tol) {
            vertices.push([s, t]);
        }
    }
    diagnostics.touching = !vertices.is_empty();
    Ok(Section {
        polygon: Polygon2D { vertices },
        diagnostics,
        facet_count: halfplanes.len(),
    })
}

fn unit2(v: [f64; 2]) -> [f64; 2] {
    let r = v[0].hypot(v[1]);
    [v[0] / r, v[1] / r]
}

/// Clip the square `[-r, r]^2` by each half-plane `a s + b t <= c`.
fn clip_box(halfplanes: &[[f64; 3]], r: f64) -> Vec<[f64; 2]> {
    let mut poly = vec![[-r, -r], [r, -r], [r, r], [-r, r]];
    for h in halfplanes {
        poly = clip(&poly, h[0], h[1], h[2]);
        if poly.is_empty() {
            break;
        }
    }
    poly
}

/// Keep the part of a convex polygon with `a·s + b·t <= c`.
fn clip(poly: &[[f64; 2]], a: f64, b: f64, c: f64) -> Vec<[f64; 2]> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    let val = |p: &[f64; 2]| a * p[0] + b * p[1] - c;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let (vp, vq) = (val(&p), val(&q));
        if vp <= 0.0 {
            out.push(p);
        }
        if (vp < 0.0 && vq > 0.0) || (vp > 0.0 && vq < 0.0) {
            let t = vp / (vp - vq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

fn clean(mut poly: Vec<[f64; 2]>, diag: &mut SectionDiagnostics) -> Polygon2D {
    // Merge cyclically adjacent near-duplicates.
    let mut i = 0;
    while poly.len() > 1 && i < poly.len() {
        let j = (i + 1) % poly.len();
        let (p, q) = (poly[i], poly[j]);
        if (p[0] - q[0]).hypot(p[1] - q[1]) <= MERGE_TOL {
            poly[i] = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
            poly.remove(j);
            diag.merged_vertices += 1;
            if j < i {
                i = i.saturating_sub(1);
            }
        } else {
            i += 1;
        }
    }
    // Drop vertices without a strictly positive left turn.
    let mut changed = true;
    while changed && poly.len() >= 3 {
        changed = false;
        let n = poly.len();
        for i in 0..n {
            let a = poly[(i + n - 1) % n];
            let b = poly[i];
            let c = poly[(i + 1) % n];
            let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
            let scale = (b[0] - a[0]).hypot(b[1] - a[1]) * (c[0] - b[0]).hypot(c[1] - b[1]);
            if cross <= 1e-12 * scale {
                poly.remove(i);
                diag.collinear_dropped += 1;
                changed = true;
                break;
            }
        }
    }
    Polygon2D { vertices: poly }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::vector;
    use crate::polytope::perimeter;

    #[test]
    fn octahedron_square() {
        let s = section_polygon(&VPolytope::cross_polytope(3), &Plane::coordinate(3)).unwrap();
        assert_eq!(s.edge_count(), 4);
        assert!(!s.diagnostics.is_degenerate());
        assert!((perimeter(&s.polygon) - 4.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(s.polygon.area() > 0.0);
    }

    #[test]
    fn plane_missing_the_body() {
        let k = VPolytope::new(
            vec![vec![0.0, 0.0, 5.0], vec![1.0, 0.0, 6.0], vec![0.0, 1.0, 7.0], vec![1.0, 1.0, 9.0]],
            false,
        )
        .unwrap();
        let s = section_polygon(&k, &Plane::coordinate(3)).unwrap();
        assert!(s.polygon.is_empty());
        assert_eq!(s.edge_count(), 0);
        assert_eq!(perimeter(&s.polygon), 0.0);
    }

    #[test]
    fn touching_plane_is_flagged() {
        // Tetrahedron with one vertex exactly on z = 0.
        let k = VPolytope::new(
            vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0], vec![-1.0, -1.0, 1.0]],
            false,
        )
        .unwrap();
        let s = section_polygon(&k, &Plane::coordinate(3)).unwrap();
        assert_eq!(s.edge_count(), 0);
        assert!(s.diagnostics.touching || s.polygon.is_empty());
    }

    #[test]
    fn flat_bodies() {
        // Triangle above the plane: empty.
        let k = VPolytope::new(vec![vec![0.0, 0.0, 5.0], vec![1.0, 0.0, 6.0], vec![0.0, 1.0, 7.0]], false).unwrap();
        let s = section_polygon(&k, &Plane::coordinate(3)).unwrap();
        assert!(s.polygon.is_empty());
        // Triangle crossing z = 0 along y = 0 between x = -1 and x = 1.
        let k = VPolytope::new(vec![vec![-2.0, 0.0, -1.0], vec![2.0, 0.0, -1.0], vec![0.0, 0.0, 1.0]], false).unwrap();
        let s = section_polygon(&k, &Plane::coordinate(3)).unwrap();
        assert_eq!(s.edge_count(), 0);
        assert!(s.diagnostics.touching);
        let mut xs: Vec<f64> = s.polygon.vertices.iter().map(|p| p[0]).collect();
        xs.sort_by(f64::total_cmp);
        assert!((xs[0] + 1.0).abs() < 1e-12 && (xs[1] - 1.0).abs() < 1e-12);
        assert!(s.polygon.vertices.iter().all(|p| p[1].abs() < 1e-12));
        // Square lying in E: the section is the square itself.
        let sq = vec![vec![1.0, 1.0, 0.0], vec![-1.0, 1.0, 0.0], vec![-1.0, -1.0, 0.0], vec![1.0, -1.0, 0.0]];
        let s = section_polygon(&VPolytope::new(sq, false).unwrap(), &Plane::coordinate(3)).unwrap();
        assert_eq!(s.edge_count(), 4);
        assert!((s.polygon.area() - 4.0).abs() < 1e-12);
        // A single point on E, and segment piercing E.
        let s = section_polygon(&VPolytope::new(vec![vec![0.5, 0.25, 0.0]], false).unwrap(), &Plane::coordinate(3)).unwrap();
        assert_eq!(s.polygon.vertices, vec![[0.5, 0.25]]);
        let k = VPolytope::new(vec![vec![1.0, 2.0, -1.0], vec![1.0, 2.0, 3.0]], false).unwrap();
        let s = section_polygon(&k, &Plane::coordinate(3)).unwrap();
        assert_eq!(s.polygon.vertices.len(), 1);
        assert!((s.polygon.vertices[0][0] - 1.0).abs() < 1e-12 && (s.polygon.vertices[0][1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn counterclockwise_output() {
        let k = VPolytope::cross_polytope(4);
        let e = Plane::from_basis(&[1.0, 0.3, 0.2, 0.0], &[0.0, 1.0, -0.5, 0.4]).unwrap();
        let s = section_polygon(&k, &e).unwrap();
        assert!(s.polygon.area() > 0.0);
        let poly = &s.polygon.vertices;
        for i in 0..poly.len() {
            let (a, b, c) = (poly[i], poly[(i + 1) % poly.len()], poly[(i + 2) % poly.len()]);
            assert!((b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) > 0.0);
        }
        // Every vertex lifts into K.
        let facets = crate::polytope::enumerate_facets(&k).unwrap();
        for p in poly {
            assert!(facets.max_violation(&e.lift(*p)) <= 1e-9);
        }
        assert!(vector::norm(&e.lift(poly[0])) > 0.0);
    }
}
