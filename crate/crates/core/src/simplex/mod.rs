//! Linear programs `max <z,x> s.t. Ax <= b` and a vertex-walking simplex
//! engine.
//!
//! A vertex is represented by the `d` rows tight at it (its basis). Pivoting
//! releases one tight row and follows the edge until another row blocks.

mod basis;
mod engine;
mod phase1;
mod rules;

pub use basis::{feasibility_tolerance, BasisState, Step};
pub use engine::{neighbors, solve_with_rule, SolveOutcome, Termination, WalkRecord};
pub use phase1::find_initial_vertex;
pub use rules::{Bland, Dantzig, GreatestImprovement, PivotRule, Selection};

use crate::numerics::vector::{check_finite, dot, norm};
use crate::numerics::{Lu, Mat};
use crate::{Error, Result};

/// `n >= d` rows; the default right-hand side is all ones.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    a: Mat,
    b: Vec<f64>,
    z: Vec<f64>,
    row_norms: Vec<f64>,
}

impl LinearProgram {
    pub fn new(a: Mat, b: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: b.len(),
            });
        }
        if z.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: z.len(),
            });
        }
        if a.rows() < a.cols() {
            return Err(Error::InvalidInput(format!(
                "need at least d = {} constraints, got {}",
                a.cols(),
                a.rows()
            )));
        }
        check_finite(&b)?;
        check_finite(&z)?;
        let row_norms = a.row_iter().map(norm).collect();
        Ok(Self { a, b, z, row_norms })
    }

    /// The `b = 1` form.
    pub fn canonical(a: Mat, z: Vec<f64>) -> Result<Self> {
        let n = a.rows();
        Self::new(a, vec![1.0; n], z)
    }

    pub fn from_rows(rows: &[Vec<f64>], b: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        Self::new(Mat::from_rows(rows)?, b, z)
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.a.row(i)
    }

    pub fn row_norm(&self, i: usize) -> f64 {
        self.row_norms[i]
    }

    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn is_canonical(&self) -> bool {
        self.b.iter().all(|&v| v == 1.0)
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        dot(&self.z, x)
    }

    pub fn with_objective(&self, z: Vec<f64>) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), z)
    }

    /// `b_i - <a_i, x>`.
    pub fn slack(&self, i: usize, x: &[f64]) -> f64 {
        self.b[i] - dot(self.row(i), x)
    }

    /// Basic solution of the given rows, validated as a vertex of `P`.
    pub fn vertex(&self, rows: &[usize]) -> Result<VertexBasis> {
        let mut rows = rows.to_vec();
        rows.sort_unstable();
        rows.dedup();
        if rows.len() != self.dim() || rows.iter().any(|&r| r >= self.num_rows()) {
            return Err(Error::InvalidInput(format!(
                "a basis needs {} distinct row indices",
                self.dim()
            )));
        }
        let sub = self.a.select_rows(&rows);
        let lu = Lu::factor(&sub)?;
        let rhs: Vec<f64> = rows.iter().map(|&i| self.b[i]).collect();
        let x = lu.solve(&rhs);
        let v = VertexBasis { tight_rows: rows, x };
        v.validate(self)?;
        Ok(v)
    }
}

/// A vertex of `P` named by `d` tight rows of full rank.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexBasis {
    pub tight_rows: Vec<usize>,
    pub x: Vec<f64>,
}

impl VertexBasis {
    /// Checks rank, the tight equations and feasibility of all other rows.
    pub fn validate(&self, lp: &LinearProgram) -> Result<()> {
        let d = lp.dim();
        if self.tight_rows.len() != d || self.x.len() != d {
            return Err(Error::InvalidInput("basis has wrong size".into()));
        }
        if !self.tight_rows.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("basis rows must be sorted and distinct".into()));
        }
        Lu::factor(&lp.a.select_rows(&self.tight_rows))?;
        let scale = 1.0 + norm(&self.x);
        for &i in &self.tight_rows {
            let tol = feasibility_tolerance(lp, i) * scale;
            if lp.slack(i, &self.x).abs() > tol {
                return Err(Error::Precondition(format!("row {i} is not tight at the vertex")));
            }
        }
        for i in 0..lp.num_rows() {
            if lp.slack(i, &self.x) < -feasibility_tolerance(lp, i) * scale {
                return Err(Error::Precondition(format!("row {i} is violated at the vertex")));
            }
        }
        Ok(())
    }

    pub fn shares_facets_with(&self, other: &VertexBasis) -> usize {
        self.tight_rows
            .iter()
            .filter(|r| other.tight_rows.binary_search(r).is_ok())
            .count()
    }
}
