//! Vertex-edge graphs of H-polytopes by basis enumeration.

use std::collections::{HashMap, VecDeque};

use super::facets::{binomial, enumerate_facets_with_budget, next_combination, DEFAULT_FACET_BUDGET};
use super::{HPolytope, VPolytope};
use crate::numerics::numerical_rank;
use crate::numerics::vector::{dot, norm};
use crate::numerics::{Lu, Mat};
use crate::{Error, Result};

const FEAS_RTOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GraphVertex {
    pub point: Vec<f64>,
    /// All rows tight at the point (more than `d` at a degenerate vertex).
    pub tight: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VertexGraph {
    pub vertices: Vec<GraphVertex>,
    pub adjacency: Vec<Vec<usize>>,
}

impl VertexGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn find(&self, tight: &[usize]) -> Option<usize> {
        self.vertices.iter().position(|v| v.tight == tight)
    }
}

pub fn vertex_edge_graph(p: &HPolytope) -> Result<VertexGraph> {
    vertex_edge_graph_with_budget(p, DEFAULT_FACET_BUDGET)
}

/// Vertices are feasible basic solutions; two vertices are adjacent when the
/// rows tight at both have rank `d - 1`.
pub fn vertex_edge_graph_with_budget(p: &HPolytope, budget: u128) -> Result<VertexGraph> {
    let d = p.dim();
    let n = p.len();
    let needed = binomial(n, d);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    check_bounded(p, budget)?;

    let rows = p.normals();
    let b = p.rhs();
    let row_norms: Vec<f64> = rows.iter().map(|r| norm(r)).collect();
    let mut by_tight: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut vertices: Vec<GraphVertex> = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let sub = Mat::from_rows(&subset.iter().map(|&i| rows[i].as_slice()).collect::<Vec<_>>())?;
        if let Ok(lu) = Lu::factor(&sub) {
            let rhs: Vec<f64> = subset.iter().map(|&i| b[i]).collect();
            let x = lu.solve(&rhs);
            let xs = 1.0 + norm(&x);
            let slack = |j: usize| dot(&rows[j], &x) - b[j];
            if (0..n).all(|j| slack(j) <= FEAS_RTOL * row_norms[j] * xs) {
                let tight: Vec<usize> = (0..n)
                    .filter(|&j| slack(j).abs() <= FEAS_RTOL * row_norms[j] * xs)
                    .collect();
                by_tight.entry(tight.clone()).or_insert_with(|| {
                    vertices.push(GraphVertex { point: x, tight });
                    vertices.len() - 1
                });
            }
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }

    let mut adjacency = vec![Vec::new(); vertices.len()];
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let common: Vec<Vec<f64>> = vertices[i]
                .tight
                .iter()
                .filter(|r| vertices[j].tight.binary_search(r).is_ok())
                .map(|&r| rows[r].clone())
                .collect();
            if common.len() + 1 >= d && numerical_rank(&common, 1e-10) == d - 1 {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    Ok(VertexGraph {
        vertices,
        adjacency,
    })
}

/// `{Ax <= b}` is bounded iff the rows of `A` contain 0 in the interior of
/// their convex hull (no nonzero `r` with `Ar <= 0`).
fn check_bounded(p: &HPolytope, budget: u128) -> Result<()> {
    let unbounded = || Error::Unbounded { ray: Vec::new() };
    let normals = VPolytope::new(p.normals().to_vec(), false)?;
    match enumerate_facets_with_budget(&normals, budget) {
        Ok(f) if f.contains_origin_strictly() => Ok(()),
        Ok(f) => {
            let worst = f
                .facets
                .iter()
                .min_by(|a, b| a.offset.total_cmp(&b.offset))
                .map(|f| f.normal.clone())
                .unwrap_or_default();
            Err(Error::Unbounded { ray: worst })
        }
        Err(Error::RankDeficient { .. }) => Err(unbounded()),
        Err(e) => Err(e),
    }
}

/// Longest shortest path, by breadth-first search from every vertex.
pub fn graph_diameter(g: &VertexGraph) -> Result<usize> {
    let n = g.vertices.len();
    let mut diameter = 0;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &g.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for &x in &dist {
            if x == usize::MAX {
                return Err(Error::InvalidInput("vertex graph is disconnected".into()));
            }
            diameter = diameter.max(x);
        }
    }
    Ok(diameter)
}
