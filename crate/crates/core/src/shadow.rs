//! The shadow-vertex pivot rule.
//!
//! For objectives moving in a plane `E`, the optimal basis changes only when a
//! multiplier of the current basis crosses zero. Both the `z0 -> z` path and
//! the full rotation compute those crossings in closed form from the current
//! basis (`y(λ) = α + λβ` on the path, `y(θ) = y_u cos θ + y_v sin θ` in the
//! sweep), so no arc is skipped however short it is.

use std::f64::consts::{PI, TAU};

use crate::numerics::vector::{distance, norm, scale};
use crate::numerics::RngStream;
use crate::polytope::Plane;
use crate::simplex::{
    find_initial_vertex, solve_with_rule, BasisState, Dantzig, LinearProgram, PivotRule, Selection,
    Termination, VertexBasis, WalkRecord,
};
use crate::{Error, Result};

/// Critical parameters closer than this are one event, and flagged.
pub const ARC_TIE_TOL: f64 = 1e-11;

const PROBE_ANGLES: usize = 360;

/// Pivot rule following the optimal vertex of `(1-λ)·z0 + λ·z` for λ from
/// 0 to 1, where `z` is the program's objective.
#[derive(Clone, Debug)]
pub struct ShadowVertexRule {
    z0: Vec<f64>,
    lambda: f64,
    /// Parameter at which each pivot happened.
    pub breakpoints: Vec<f64>,
    /// Events where two multipliers vanished at the same parameter.
    pub ties: usize,
}

impl ShadowVertexRule {
    pub fn new(z0: Vec<f64>) -> Self {
        Self {
            z0,
            lambda: 0.0,
            breakpoints: Vec::new(),
            ties: 0,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl PivotRule for ShadowVertexRule {
    fn name(&self) -> &'static str {
        "shadow-vertex"
    }

    fn select(&mut self, basis: &BasisState<'_>) -> Result<Selection> {
        let lp = basis.lp();
        let alpha = basis.multipliers(&self.z0);
        let y1 = basis.multipliers(lp.z());
        let rows = basis.rows();
        let tiny = 1e-13 * (norm(&self.z0) + norm(lp.z()));
        let mut best: Option<(f64, usize)> = None;
        let mut tie = false;
        for p in 0..rows.len() {
            let w = lp.row_norm(rows[p]);
            let beta = y1[p] - alpha[p];
            if beta * w >= -tiny {
                continue;
            }
            let crossing = (-alpha[p] / beta).max(self.lambda);
            match best {
                Some((l, q)) if (crossing - l).abs() <= ARC_TIE_TOL => {
                    tie = true;
                    if rows[p] < rows[q] {
                        best = Some((l.min(crossing), p));
                    }
                }
                Some((l, _)) if crossing >= l => {}
                _ => {
                    tie = false;
                    best = Some((crossing, p));
                }
            }
        }
        match best {
            Some((l, p)) if l < 1.0 - 1e-12 => {
                if tie {
                    self.ties += 1;
                }
                self.lambda = l;
                self.breakpoints.push(l);
                Ok(Selection::Release(p))
            }
            _ => Ok(Selection::Optimal),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShadowPath {
    pub walk: WalkRecord,
    /// Improving ray certifying that `z` is unbounded, if the walk ran into one.
    pub ray: Option<Vec<f64>>,
    pub breakpoints: Vec<f64>,
    pub ties: usize,
}

/// Walk from `x0` (optimal for `z0`) to the optimum of the program's
/// objective along the shadow of `span(z0, z)`.
pub fn shadow_path(lp: &LinearProgram, z0: &[f64], x0: &VertexBasis, budget: usize) -> Result<ShadowPath> {
    if z0.len() != lp.dim() {
        return Err(Error::DimensionMismatch {
            expected: lp.dim(),
            found: z0.len(),
        });
    }
    let basis = BasisState::from_vertex(lp, x0)?;
    let y0 = basis.multipliers(z0);
    let zn = norm(z0);
    if (0..y0.len()).any(|p| basis.is_improving(&y0, p, zn)) {
        return Err(Error::Precondition("start vertex is not optimal for z0".into()));
    }
    let mut rule = ShadowVertexRule::new(z0.to_vec());
    let out = solve_with_rule(lp, x0, &mut rule, budget)?;
    Ok(ShadowPath {
        walk: out.walk,
        ray: out.ray,
        breakpoints: rule.breakpoints,
        ties: rule.ties,
    })
}

/// One vertex of the shadow polygon with the arc of angles on which it is
/// optimal. Angles are measured from `u` towards `v`; `end` may exceed 2π
/// for the arc that wraps around.
#[derive(Clone, Debug, PartialEq)]
pub struct ShadowVertex {
    pub arc: (f64, f64),
    pub basis: VertexBasis,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepResult {
    pub shadow_vertices: Vec<ShadowVertex>,
    /// Number of distinct vertices of `P` optimal somewhere on the circle.
    pub total_count: usize,
    /// Angle intervals on which the program is unbounded.
    pub unbounded_arcs: Vec<(f64, f64)>,
    /// Critical angles closer than [`ARC_TIE_TOL`] to the previous one.
    pub flagged_ties: usize,
    pub degenerate_pivots: usize,
    pub pivots: usize,
    /// The budget ran out before the sweep closed.
    pub partial: bool,
}

impl SweepResult {
    pub fn is_flagged(&self) -> bool {
        self.flagged_ties > 0 || self.degenerate_pivots > 0 || self.partial
    }
}

enum SweepEnd {
    Closed,
    Unbounded(f64),
    Budget,
}

struct OrientedSweep<'a> {
    lp: &'a LinearProgram,
    u: Vec<f64>,
    w: Vec<f64>,
    arcs: Vec<(f64, f64, VertexBasis)>,
    ties: usize,
    degenerate: usize,
    pivots: usize,
}

impl<'a> OrientedSweep<'a> {
    /// Rotate from `phi0` with `start` optimal, for at most one turn.
    fn run(&mut self, phi0: f64, start: &VertexBasis, budget: usize) -> Result<SweepEnd> {
        let mut basis = BasisState::new(self.lp, &start.tight_rows)?;
        let mut phi = phi0;
        let mut last_event = f64::NEG_INFINITY;
        let limit = phi0 + TAU;
        loop {
            let yu = basis.multipliers(&self.u);
            let yw = basis.multipliers(&self.w);
            let rows = basis.rows().to_vec();
            let mut next: Option<(f64, usize)> = None;
            for p in 0..rows.len() {
                let scale = self.lp.row_norm(rows[p]);
                let radius = yu[p].hypot(yw[p]);
                if radius * scale <= 1e-14 {
                    continue;
                }
                // y_p(φ) = R cos(φ - ψ) turns negative at φ = ψ + π/2.
                let mut crossing = yw[p].atan2(yu[p]) + PI / 2.0;
                while crossing < phi - ARC_TIE_TOL {
                    crossing += TAU;
                }
                while crossing >= phi - ARC_TIE_TOL + TAU {
                    crossing -= TAU;
                }
                let better = match next {
                    None => true,
                    Some((c, q)) => {
                        if (crossing - c).abs() <= ARC_TIE_TOL {
                            rows[p] < rows[q]
                        } else {
                            crossing < c
                        }
                    }
                };
                if better {
                    next = Some((crossing, p));
                }
            }
            let Some((crossing, p)) = next else {
                self.arcs.push((phi, limit, basis.vertex()));
                return Ok(SweepEnd::Closed);
            };
            let crossing = crossing.max(phi);
            if crossing >= limit - ARC_TIE_TOL {
                self.arcs.push((phi, limit, basis.vertex()));
                return Ok(SweepEnd::Closed);
            }
            if crossing - last_event <= ARC_TIE_TOL {
                self.ties += 1;
            }
            last_event = crossing;
            self.arcs.push((phi, crossing, basis.vertex()));
            if self.pivots >= budget {
                return Ok(SweepEnd::Budget);
            }
            let step = basis.step(p);
            if step.entering.is_none() {
                return Ok(SweepEnd::Unbounded(crossing));
            }
            let before = basis.x().to_vec();
            basis.pivot(&step)?;
            self.pivots += 1;
            if distance(&before, basis.x()) <= 1e-9 * (1.0 + norm(&before)) {
                self.degenerate += 1;
            }
            phi = crossing;
            if basis.rows() == start.tight_rows.as_slice() {
                self.arcs.push((phi, limit, basis.vertex()));
                return Ok(SweepEnd::Closed);
            }
        }
    }
}

/// Rotate the objective `cos θ·u + sin θ·v` once around `E` and record every
/// optimal basis. The count equals the number of vertices of the projection
/// of `P` onto `E`.
pub fn shadow_sweep_count(lp: &LinearProgram, plane: &Plane, budget: usize) -> Result<SweepResult> {
    if plane.dim() != lp.dim() {
        return Err(Error::DimensionMismatch {
            expected: lp.dim(),
            found: plane.dim(),
        });
    }
    let start = find_initial_vertex(lp, &mut RngStream::new(0, "shadow-sweep").rng())?;
    let inner_budget = 1000 + 50 * lp.num_rows() * lp.dim();
    let mut found = None;
    for k in 0..PROBE_ANGLES {
        let theta = TAU * k as f64 / PROBE_ANGLES as f64;
        let c: Vec<f64> = plane
            .u()
            .iter()
            .zip(plane.v())
            .map(|(a, b)| theta.cos() * a + theta.sin() * b)
            .collect();
        let probe = lp.with_objective(c)?;
        let out = solve_with_rule(&probe, &start, Dantzig, inner_budget)?;
        if out.walk.terminated == Termination::Optimal {
            found = Some((theta, out.optimum.expect("optimal")));
            break;
        }
    }
    let Some((theta0, first)) = found else {
        return Ok(SweepResult {
            unbounded_arcs: vec![(0.0, TAU)],
            ..SweepResult::default()
        });
    };

    let mut forward = OrientedSweep {
        lp,
        u: plane.u().to_vec(),
        w: plane.v().to_vec(),
        arcs: Vec::new(),
        ties: 0,
        degenerate: 0,
        pivots: 0,
    };
    let end = forward.run(theta0, &first, budget)?;
    let mut result = SweepResult::default();
    let mut arcs: Vec<(f64, f64, VertexBasis)> = Vec::new();
    match end {
        SweepEnd::Closed => {
            arcs = std::mem::take(&mut forward.arcs);
            // The start basis owns both the first and the last arc.
            if arcs.len() > 1 && arcs.last().unwrap().2.tight_rows == arcs[0].2.tight_rows {
                let (s, _, _) = arcs.pop().unwrap();
                arcs[0].0 = s - TAU;
            }
        }
        SweepEnd::Budget => {
            result.partial = true;
            arcs = std::mem::take(&mut forward.arcs);
        }
        SweepEnd::Unbounded(theta_b) => {
            let mut backward = OrientedSweep {
                lp,
                u: plane.u().to_vec(),
                w: scale(plane.v(), -1.0),
                arcs: Vec::new(),
                ties: 0,
                degenerate: 0,
                pivots: 0,
            };
            let back_budget = budget.saturating_sub(forward.pivots).max(1);
            let back_end = backward.run(-theta0, &first, back_budget)?;
            let theta_a = match back_end {
                SweepEnd::Unbounded(phi) => -phi,
                SweepEnd::Budget => {
                    result.partial = true;
                    f64::NAN
                }
                SweepEnd::Closed => {
                    // Cannot close after the forward sweep found a ray.
                    result.flagged_ties += 1;
                    f64::NAN
                }
            };
            // Backward arcs, reversed into increasing angle; skip its copy of
            // the start vertex whose arc merges with the forward one.
            let mut back: Vec<(f64, f64, VertexBasis)> = backward
                .arcs
                .into_iter()
                .map(|(a, b, v)| (-b, -a, v))
                .collect();
            back.reverse();
            if let Some(last) = back.pop() {
                if let Some(first_fwd) = forward.arcs.first_mut() {
                    first_fwd.0 = last.0;
                }
            }
            arcs.extend(back);
            arcs.append(&mut forward.arcs);
            if theta_a.is_finite() {
                result.unbounded_arcs.push((theta_b, theta_a + TAU));
            }
            result.flagged_ties += backward.ties;
            result.degenerate_pivots += backward.degenerate;
            result.pivots += backward.pivots;
        }
    }
    result.flagged_ties += forward.ties;
    result.degenerate_pivots += forward.degenerate;
    result.pivots += forward.pivots;

    // Merge consecutive arcs of the same point (degenerate pivots).
    for (a, b, v) in arcs {
        let tol = 1e-9 * (1.0 + norm(&v.x));
        match result.shadow_vertices.last_mut() {
            Some(prev) if distance(&prev.basis.x, &v.x) <= tol => prev.arc.1 = b,
            _ => result.shadow_vertices.push(ShadowVertex { arc: (a, b), basis: v }),
        }
    }
    let mut distinct: Vec<&[f64]> = Vec::new();
    for sv in &result.shadow_vertices {
        let tol = 1e-9 * (1.0 + norm(&sv.basis.x));
        if !distinct.iter().any(|p| distance(p, &sv.basis.x) <= tol) {
            distinct.push(&sv.basis.x);
        }
    }
    result.total_count = distinct.len();
    Ok(result)
}
