mod common;

use std::f64::consts::TAU;

use common::{dist, dot, gaussian_vec, interior_points};
use shadowbench_core::numerics::RngStream;
use shadowbench_core::polytope::{plane_from_span, section_polygon, HPolytope, Plane, VPolytope};
use shadowbench_core::shadow::{shadow_path, shadow_sweep_count};
use shadowbench_core::simplex::{find_initial_vertex, solve_with_rule, Dantzig, LinearProgram, Termination};

fn cube_lp(d: usize, z: Vec<f64>) -> LinearProgram {
    let p = HPolytope::cube(d);
    LinearProgram::from_rows(p.normals(), p.rhs().to_vec(), z).unwrap()
}

#[test]
fn path_with_equal_objectives_is_empty() {
    let lp = cube_lp(3, vec![1.0, 2.0, 3.0]);
    let x0 = lp.vertex(&[0, 2, 4]).unwrap();
    let path = shadow_path(&lp, &[1.0, 2.0, 3.0], &x0, 10).unwrap();
    assert_eq!(path.walk.pivot_count, 0);
}

#[test]
fn square_path_takes_one_pivot() {
    // Rows +e1, -e1, +e2, -e2; (1, -1) is tight at +e1 and -e2.
    let lp = cube_lp(2, vec![0.0, 1.0]);
    let x0 = lp.vertex(&[0, 3]).unwrap();
    assert_eq!(x0.x, vec![1.0, -1.0]);
    let path = shadow_path(&lp, &[1.0, 0.0], &x0, 10).unwrap();
    assert_eq!(path.walk.pivot_count, 1);
    assert_eq!(path.walk.vertices[1].x, vec![1.0, 1.0]);
    assert_eq!(path.breakpoints.len(), 1);
}

#[test]
fn path_requires_optimal_start() {
    let lp = cube_lp(2, vec![0.0, 1.0]);
    let x0 = lp.vertex(&[1, 3]).unwrap();
    assert!(shadow_path(&lp, &[1.0, 0.0], &x0, 10).is_err());
}

#[test]
fn square_and_cube_sweeps_count_four() {
    let lp = cube_lp(2, vec![1.0, 0.0]);
    let s = shadow_sweep_count(&lp, &Plane::coordinate(2), 100).unwrap();
    assert_eq!(s.total_count, 4);
    assert!(s.unbounded_arcs.is_empty());
    let arc_total: f64 = s.shadow_vertices.iter().map(|v| v.arc.1 - v.arc.0).sum();
    assert!((arc_total - TAU).abs() < 1e-9);

    let lp = cube_lp(3, vec![1.0, 0.0, 0.0]);
    let s = shadow_sweep_count(&lp, &Plane::coordinate(3), 100).unwrap();
    // The cube's projection onto span(e1, e2) is the square.
    let projected: Vec<[f64; 2]> = s.shadow_vertices.iter().map(|v| [v.basis.x[0], v.basis.x[1]]).collect();
    let mut corners: Vec<[f64; 2]> = Vec::new();
    for p in projected {
        if !corners.iter().any(|q| (q[0] - p[0]).abs() + (q[1] - p[1]).abs() < 1e-9) {
            corners.push(p);
        }
    }
    assert_eq!(corners.len(), 4);
}

#[test]
fn octahedron_polar_sweep_matches_section() {
    let k = VPolytope::cross_polytope(3);
    let p = HPolytope::canonical(k.points().to_vec()).unwrap();
    let lp = LinearProgram::from_rows(p.normals(), p.rhs().to_vec(), vec![1.0, 0.0, 0.0]).unwrap();
    let e = Plane::coordinate(3);
    let section = section_polygon(&k, &e).unwrap();
    assert_eq!(section.edge_count(), 4);
    let sweep = shadow_sweep_count(&lp, &e, 100).unwrap();
    let mut pts: Vec<Vec<f64>> = Vec::new();
    for v in &sweep.shadow_vertices {
        let q = vec![v.basis.x[0], v.basis.x[1]];
        if !pts.iter().any(|p| dist(p, &q) < 1e-9) {
            pts.push(q);
        }
    }
    assert_eq!(pts.len(), section.edge_count());
}

#[test]
fn sweep_matches_section_on_random_bodies() {
    let mut rng = RngStream::new(21, "duality").rng();
    let mut flagged = 0;
    let total = 40;
    for t in 0..total {
        let d = 3 + t % 2;
        let n = 8 + t % 5;
        let pts = interior_points(&mut rng, n, d, 0.2);
        let k = VPolytope::new(pts.clone(), false).unwrap();
        let plane = Plane::from_basis(&gaussian_vec(&mut rng, d), &gaussian_vec(&mut rng, d)).unwrap();
        let section = section_polygon(&k, &plane).unwrap();
        let lp = LinearProgram::from_rows(&pts, vec![1.0; n], plane.u().to_vec()).unwrap();
        let sweep = shadow_sweep_count(&lp, &plane, 10_000).unwrap();
        assert!(sweep.unbounded_arcs.is_empty());
        if sweep.is_flagged() || section.diagnostics.is_degenerate() {
            flagged += 1;
            continue;
        }
        assert_eq!(sweep.total_count, section.edge_count(), "instance {t}");
        // Arcs tile the circle in increasing order.
        for w in sweep.shadow_vertices.windows(2) {
            assert!(w[0].arc.1 <= w[1].arc.0 + 1e-9);
            assert!(w[0].arc.0 < w[0].arc.1);
        }
    }
    assert!(flagged * 20 <= total);
}

#[test]
fn path_is_no_longer_than_sweep() {
    let mut rng = RngStream::new(22, "path-vs-sweep").rng();
    for _ in 0..30 {
        let d = 3;
        let pts = interior_points(&mut rng, 10, d, 0.3);
        let z0 = gaussian_vec(&mut rng, d);
        let z = gaussian_vec(&mut rng, d);
        let lp = LinearProgram::from_rows(&pts, vec![1.0; 10], z.clone()).unwrap();
        let start = find_initial_vertex(&lp, &mut rng).unwrap();
        let lp0 = lp.with_objective(z0.clone()).unwrap();
        let x0 = solve_with_rule(&lp0, &start, Dantzig, 1000).unwrap().optimum.unwrap();
        let path = shadow_path(&lp, &z0, &x0, 1000).unwrap();
        assert_eq!(path.walk.terminated, Termination::Optimal);
        let greedy = solve_with_rule(&lp, &start, Dantzig, 1000).unwrap().optimum.unwrap();
        assert!((dot(&z, &greedy.x) - dot(&z, &path.walk.vertices.last().unwrap().x)).abs() < 1e-8);
        let sweep = shadow_sweep_count(&lp, &plane_from_span(&z0, &z).unwrap(), 1000).unwrap();
        assert!(path.walk.pivot_count <= sweep.total_count);
        // Breakpoints increase along the path.
        assert!(path.breakpoints.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn unbounded_programs_record_an_unbounded_arc() {
    // K = conv(0, a_1, …) has 0 on its boundary, so P = K° is unbounded:
    // the half-plane x_2 >= -1 with x_1 in [-1, 1] only.
    let rows = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, -1.0]];
    let lp = LinearProgram::from_rows(&rows, vec![1.0; 3], vec![0.0, -1.0]).unwrap();
    let s = shadow_sweep_count(&lp, &Plane::coordinate(2), 100).unwrap();
    assert_eq!(s.total_count, 2);
    assert_eq!(s.unbounded_arcs.len(), 1);
    let (a, b) = s.unbounded_arcs[0];
    // Unbounded exactly for objectives with a positive e2 component.
    assert!((b - a - TAU / 2.0).abs() < 1e-9, "{a} {b}");
}
