//! Polytopes in V- and H-form, planes, planar polygons and polar duality.

mod facets;
mod graph;
mod section;

pub use facets::{
    binomial, enumerate_facets, enumerate_facets_with_budget, Facet, FacetList, DEFAULT_FACET_BUDGET,
};
pub use graph::{graph_diameter, vertex_edge_graph, vertex_edge_graph_with_budget, GraphVertex, VertexGraph};
pub use section::{section_polygon, section_polygon_with_budget, Section, SectionDiagnostics, MERGE_TOL};

use crate::numerics::vector::{self, check_finite};
use crate::numerics::Mat;
use crate::{Error, Result};

/// `{x : <a_i, x> <= b_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolytope {
    normals: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    dim: usize,
}

impl HPolytope {
    pub fn new(normals: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self> {
        let dim = check_points(&normals)?;
        if rhs.len() != normals.len() {
            return Err(Error::DimensionMismatch {
                expected: normals.len(),
                found: rhs.len(),
            });
        }
        check_finite(&rhs)?;
        Ok(Self { normals, rhs, dim })
    }

    /// The `b = 1` form.
    pub fn canonical(normals: Vec<Vec<f64>>) -> Result<Self> {
        let n = normals.len();
        Self::new(normals, vec![1.0; n])
    }

    /// `{|x_i| <= 1}` as `2d` rows ordered `+e_1, -e_1, +e_2, ...`.
    pub fn cube(d: usize) -> Self {
        let mut normals = Vec::with_capacity(2 * d);
        for i in 0..d {
            normals.push(vector::unit(d, i));
            normals.push(vector::scale(&vector::unit(d, i), -1.0));
        }
        Self::canonical(normals).expect("cube rows are valid")
    }

    pub fn from_matrix(a: &Mat, b: &[f64]) -> Result<Self> {
        Self::new(a.row_iter().map(<[f64]>::to_vec).collect(), b.to_vec())
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.rhs.iter().all(|&b| b == 1.0)
    }

    pub fn matrix(&self) -> Mat {
        Mat::from_rows(&self.normals).expect("rows validated at construction")
    }
}

/// `conv(points)`, or `conv({0} ∪ points)` when `include_origin` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct VPolytope {
    points: Vec<Vec<f64>>,
    include_origin: bool,
    dim: usize,
}

impl VPolytope {
    pub fn new(points: Vec<Vec<f64>>, include_origin: bool) -> Result<Self> {
        let dim = check_points(&points)?;
        Ok(Self {
            points,
            include_origin,
            dim,
        })
    }

    /// `conv(±e_1, …, ±e_d)`.
    pub fn cross_polytope(d: usize) -> Self {
        let cube = HPolytope::cube(d);
        Self::new(cube.normals().to_vec(), false).expect("valid points")
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn include_origin(&self) -> bool {
        self.include_origin
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hull generators: the points in order, then the origin if included.
    /// Facet index sets refer to positions in this list.
    pub fn generators(&self) -> Vec<Vec<f64>> {
        let mut g = self.points.clone();
        if self.include_origin {
            g.push(vec![0.0; self.dim]);
        }
        g
    }

    pub fn max_generator_norm(&self) -> f64 {
        self.points.iter().map(|p| vector::norm(p)).fold(0.0, f64::max)
    }
}

fn check_points(points: &[Vec<f64>]) -> Result<usize> {
    let dim = points
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidInput("at least one vector is required".into()))?;
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        check_finite(p)?;
    }
    Ok(dim)
}

/// Polar of `{<a_i,x> <= 1}`: `conv(0, a_1, …, a_n)`.
pub fn polar_of_h(p: &HPolytope) -> Result<VPolytope> {
    if !p.is_canonical() {
        return Err(Error::Unsupported(
            "polar duality is only defined here for right-hand side b = 1".into(),
        ));
    }
    VPolytope::new(p.normals.clone(), true)
}

/// A two-dimensional subspace with orthonormal basis `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    u: Vec<f64>,
    v: Vec<f64>,
    provenance: Option<(Vec<f64>, Vec<f64>)>,
}

const COLLINEAR_SIN: f64 = 1e-10;

impl Plane {
    /// Orthonormalise an arbitrary spanning pair, keeping `u ∥ a`.
    pub fn from_basis(a: &[f64], b: &[f64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if a.len() < 2 {
            return Err(Error::InvalidInput("a plane needs ambient dimension >= 2".into()));
        }
        check_finite(a)?;
        check_finite(b)?;
        let na = vector::norm(a);
        let nb = vector::norm(b);
        if na == 0.0 || nb == 0.0 {
            return Err(Error::InvalidInput("spanning vectors must be nonzero".into()));
        }
        let u = vector::scale(a, 1.0 / na);
        let mut w = b.to_vec();
        let p = vector::dot(&w, &u);
        vector::axpy(-p, &u, &mut w);
        // Second pass for orthogonality to 1e-16.
        let p = vector::dot(&w, &u);
        vector::axpy(-p, &u, &mut w);
        let nw = vector::norm(&w);
        if nw <= COLLINEAR_SIN * nb {
            return Err(Error::DegenerateSpan);
        }
        let v = vector::scale(&w, 1.0 / nw);
        Ok(Self {
            u,
            v,
            provenance: None,
        })
    }

    /// `(e_1, e_2)` in `ℝ^d`.
    pub fn coordinate(d: usize) -> Self {
        Self::from_basis(&vector::unit(d, 0), &vector::unit(d, 1)).expect("d >= 2")
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn provenance(&self) -> Option<(&[f64], &[f64])> {
        self.provenance.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    /// Coordinates of the orthogonal projection of `x` in the `(u, v)` frame.
    pub fn project(&self, x: &[f64]) -> [f64; 2] {
        [vector::dot(x, &self.u), vector::dot(x, &self.v)]
    }

    /// The point `s·u + t·v` of `ℝ^d`.
    pub fn lift(&self, p: [f64; 2]) -> Vec<f64> {
        self.u
            .iter()
            .zip(&self.v)
            .map(|(a, b)| p[0] * a + p[1] * b)
            .collect()
    }
}

/// `E = span(z0, z)` with `u ∥ z0`.
pub fn plane_from_span(z0: &[f64], z: &[f64]) -> Result<Plane> {
    let mut plane = Plane::from_basis(z0, z)?;
    plane.provenance = Some((z0.to_vec(), z.to_vec()));
    Ok(plane)
}

/// Convex polygon, vertices counterclockwise in plane coordinates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polygon2D {
    pub vertices: Vec<[f64; 2]>,
}

impl Polygon2D {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of edges; segments and points have none.
    pub fn edge_count(&self) -> usize {
        if self.vertices.len() >= 3 {
            self.vertices.len()
        } else {
            0
        }
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        0.5 * (0..n)
            .map(|i| {
                let p = self.vertices[i];
                let q = self.vertices[(i + 1) % n];
                p[0] * q[1] - p[1] * q[0]
            })
            .sum::<f64>()
    }
}

pub fn perimeter(poly: &Polygon2D) -> f64 {
    let vs = &poly.vertices;
    if vs.len() < 2 {
        return 0.0;
    }
    (0..vs.len())
        .map(|i| {
            let p = vs[i];
            let q = vs[(i + 1) % vs.len()];
            (q[0] - p[0]).hypot(q[1] - p[1])
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_of_cube_is_cross_polytope() {
        let k = polar_of_h(&HPolytope::cube(3)).unwrap();
        assert!(k.include_origin());
        assert_eq!(k.points().len(), 6);
        assert_eq!(k.points(), VPolytope::cross_polytope(3).points());
        let seg = polar_of_h(&HPolytope::canonical(vec![vec![1.0, 0.0]]).unwrap()).unwrap();
        assert_eq!(seg.generators(), vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
    }

    #[test]
    fn polar_rejects_general_rhs() {
        let p = HPolytope::new(vec![vec![1.0, 0.0]], vec![2.0]).unwrap();
        assert!(matches!(polar_of_h(&p), Err(Error::Unsupported(_))));
    }

    #[test]
    fn plane_examples() {
        let e = |i| vector::unit(3, i);
        let p = plane_from_span(&e(0), &e(1)).unwrap();
        assert_eq!((p.u(), p.v()), (e(0).as_slice(), e(1).as_slice()));
        let p = plane_from_span(&e(0), &[1.0, 1.0, 0.0]).unwrap();
        assert_eq!(p.u(), e(0).as_slice());
        assert!(vector::distance(p.v(), &e(1)) < 1e-15);
        assert_eq!(
            plane_from_span(&[0.0, 0.0, 2.0], &[0.0, 0.0, -5.0]),
            Err(Error::DegenerateSpan)
        );
        assert!(p.provenance().is_some());
    }

    #[test]
    fn plane_is_orthonormal() {
        let p = Plane::from_basis(&[1.0, 2.0, 3.0, 4.0], &[-2.0, 0.5, 1.0, 7.0]).unwrap();
        assert!((vector::norm(p.u()) - 1.0).abs() < 1e-12);
        assert!((vector::norm(p.v()) - 1.0).abs() < 1e-12);
        assert!(vector::dot(p.u(), p.v()).abs() < 1e-12);
    }

    #[test]
    fn perimeter_cases() {
        let sq = Polygon2D {
            vertices: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        };
        assert_eq!(perimeter(&sq), 4.0);
        assert_eq!(perimeter(&Polygon2D::empty()), 0.0);
        assert_eq!(perimeter(&Polygon2D { vertices: vec![[1.0, 2.0]] }), 0.0);
        assert_eq!(sq.area(), 1.0);
    }
}
