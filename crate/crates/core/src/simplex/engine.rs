use std::collections::HashSet;

use super::basis::BasisState;
use super::rules::{PivotRule, Selection};
use super::{LinearProgram, VertexBasis};
use crate::numerics::vector::{distance, norm};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Optimal,
    Unbounded,
    BudgetExhausted,
}

/// The sequence of bases visited by a walk.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkRecord {
    pub vertices: Vec<VertexBasis>,
    pub pivot_count: usize,
    pub terminated: Termination,
    /// Pivots that changed the basis without moving the point.
    pub degenerate_pivots: usize,
}

impl WalkRecord {
    /// Consecutive bases share `d - 1` rows and `pivot_count = |vertices| - 1`.
    pub fn check_adjacency(&self, d: usize) -> bool {
        self.pivot_count + 1 == self.vertices.len()
            && self
                .vertices
                .windows(2)
                .all(|w| w[0].shares_facets_with(&w[1]) == d - 1)
    }

    pub fn distinct_points(&self, tol: f64) -> usize {
        let mut pts: Vec<&[f64]> = Vec::new();
        for v in &self.vertices {
            if !pts.iter().any(|p| distance(p, &v.x) <= tol) {
                pts.push(&v.x);
            }
        }
        pts.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub walk: WalkRecord,
    /// Terminal vertex when the walk ended optimally.
    pub optimum: Option<VertexBasis>,
    /// Improving ray `r` (`Ar <= 0` on the last basis' edge) when unbounded.
    pub ray: Option<Vec<f64>>,
}

impl SolveOutcome {
    pub fn last(&self) -> &VertexBasis {
        self.walk.vertices.last().expect("walk contains the start vertex")
    }
}

/// Run `rule` from `start` for at most `budget` pivots.
pub fn solve_with_rule<R: PivotRule>(
    lp: &LinearProgram,
    start: &VertexBasis,
    mut rule: R,
    budget: usize,
) -> Result<SolveOutcome> {
    if budget == 0 {
        return Err(Error::InvalidInput("pivot budget must be at least 1".into()));
    }
    let mut basis = BasisState::from_vertex(lp, start)?;
    let mut walk = WalkRecord {
        vertices: vec![basis.vertex()],
        pivot_count: 0,
        terminated: Termination::Optimal,
        degenerate_pivots: 0,
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(basis.rows().to_vec());
    let z_scale = norm(lp.z());
    loop {
        let p = match rule.select(&basis)? {
            Selection::Optimal => {
                walk.terminated = Termination::Optimal;
                return Ok(SolveOutcome {
                    optimum: Some(basis.vertex()),
                    walk,
                    ray: None,
                });
            }
            Selection::Release(p) => p,
        };
        if walk.pivot_count >= budget {
            walk.terminated = Termination::BudgetExhausted;
            return Ok(SolveOutcome {
                walk,
                optimum: None,
                ray: None,
            });
        }
        let step = basis.step(p);
        if step.entering.is_none() {
            walk.terminated = Termination::Unbounded;
            return Ok(SolveOutcome {
                walk,
                optimum: None,
                ray: Some(step.direction),
            });
        }
        let before = lp.objective(basis.x());
        let x_before = basis.x().to_vec();
        basis.pivot(&step)?;
        let after = lp.objective(basis.x());
        let scale = 1.0 + norm(&x_before);
        if distance(&x_before, basis.x()) <= 1e-9 * scale {
            walk.degenerate_pivots += 1;
        } else if after < before - 1e-9 * z_scale * scale {
            return Err(Error::Internal(format!(
                "objective decreased from {before} to {after} under rule {}",
                rule.name()
            )));
        }
        if !seen.insert(basis.rows().to_vec()) {
            return Err(Error::Cycling);
        }
        walk.vertices.push(basis.vertex());
        walk.pivot_count += 1;
    }
}

/// Vertices reached from `v` along one edge (one per released tight row,
/// deduplicated by position; degenerate zero-length edges are skipped).
pub fn neighbors(lp: &LinearProgram, v: &VertexBasis) -> Result<Vec<VertexBasis>> {
    let basis = BasisState::from_vertex(lp, v)?;
    let scale = 1.0 + norm(basis.x());
    let mut out: Vec<VertexBasis> = Vec::new();
    for p in 0..lp.dim() {
        let step = basis.step(p);
        if step.entering.is_none() || step.length * norm(&step.direction) <= 1e-9 * scale {
            continue;
        }
        let mut next = basis.clone();
        next.pivot(&step)?;
        if !out.iter().any(|w| distance(&w.x, next.x()) <= 1e-9 * scale) {
            out.push(next.vertex());
        }
    }
    Ok(out)
}
