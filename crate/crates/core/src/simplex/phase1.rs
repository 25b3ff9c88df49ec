//! Finding a first vertex.
//!
//! Pick `d` independent rows `I` in random order and let `x0` solve them.
//! Every other row gets an artificial variable `s`:
//!
//! ```text
//! max -s  s.t.  <a_i,x> <= b_i (i in I),  <a_i,x> - s <= b_i (i not in I),  -s <= 0
//! ```
//!
//! `(x0, s0)` with `s0` the largest violation is a vertex of this problem, and
//! its optimum has `s = 0` exactly when `P` is nonempty.

use rand::seq::SliceRandom;
use rand::Rng;

use super::engine::{solve_with_rule, Termination};
use super::rules::Dantzig;
use super::{LinearProgram, VertexBasis};
use crate::numerics::{numerical_rank, Lu, Mat};
use crate::{Error, Result};

pub fn find_initial_vertex<R: Rng + ?Sized>(lp: &LinearProgram, rng: &mut R) -> Result<VertexBasis> {
    let d = lp.dim();
    let n = lp.num_rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut chosen_rows: Vec<Vec<f64>> = Vec::with_capacity(d);
    for &i in &order {
        chosen_rows.push(lp.row(i).to_vec());
        if numerical_rank(&chosen_rows, 1e-10) == chosen_rows.len() {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        } else {
            chosen_rows.pop();
        }
    }
    if chosen.len() < d {
        return Err(Error::NotPointed);
    }
    chosen.sort_unstable();
    let lu = Lu::factor(&lp.a().select_rows(&chosen))?;
    let x0 = lu.solve(&chosen.iter().map(|&i| lp.b()[i]).collect::<Vec<_>>());

    let (worst, s0) = (0..n)
        .filter(|i| chosen.binary_search(i).is_err())
        .map(|i| (i, -lp.slack(i, &x0)))
        .fold((usize::MAX, 0.0), |best, c| if c.1 > best.1 { c } else { best });
    let start = VertexBasis {
        tight_rows: chosen.clone(),
        x: x0.clone(),
    };
    if worst == usize::MAX || start.validate(lp).is_ok() {
        return Ok(start);
    }

    // Auxiliary problem in (x, s); row n is -s <= 0.
    let mut aux_rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut r = lp.row(i).to_vec();
        r.push(if chosen.binary_search(&i).is_ok() { 0.0 } else { -1.0 });
        aux_rows.push(r);
    }
    let mut last = vec![0.0; d + 1];
    last[d] = -1.0;
    aux_rows.push(last.clone());
    let mut aux_b = lp.b().to_vec();
    aux_b.push(0.0);
    let aux = LinearProgram::new(Mat::from_rows(&aux_rows)?, aux_b, last)?;

    let mut rows = chosen.clone();
    rows.push(worst);
    rows.sort_unstable();
    let mut x_aux = x0;
    x_aux.push(s0);
    let aux_start = VertexBasis {
        tight_rows: rows,
        x: x_aux,
    };
    let budget = 1000 + 200 * (n + d);
    let out = solve_with_rule(&aux, &aux_start, Dantzig, budget)?;
    if out.walk.terminated != Termination::Optimal {
        return Err(Error::Internal(format!(
            "phase one ended with {:?}",
            out.walk.terminated
        )));
    }
    let opt = out.optimum.expect("optimal walk has an optimum");
    let s_star = opt.x[d];
    let scale = 1.0 + crate::numerics::vector::norm(&opt.x[..d]);
    if s_star > 1e-9 * scale {
        let basis = super::basis::BasisState::new(&aux, &opt.tight_rows)?;
        let y = basis.multipliers(aux.z());
        let mut certificate = vec![0.0; n];
        for (p, &r) in opt.tight_rows.iter().enumerate() {
            if r < n {
                certificate[r] = y[p].max(0.0);
            }
        }
        return Err(Error::Infeasible { certificate });
    }
    let x: Vec<f64> = opt.x[..d].to_vec();
    // Rows tight at the optimum, preferring the basis rows.
    let mut cands: Vec<usize> = opt.tight_rows.iter().copied().filter(|&r| r < n).collect();
    for i in 0..n {
        if !cands.contains(&i) && lp.slack(i, &x).abs() <= 1e-9 * lp.row_norm(i) * scale {
            cands.push(i);
        }
    }
    let mut picked: Vec<usize> = Vec::with_capacity(d);
    let mut picked_rows: Vec<Vec<f64>> = Vec::with_capacity(d);
    for i in cands {
        picked_rows.push(lp.row(i).to_vec());
        if numerical_rank(&picked_rows, 1e-10) == picked_rows.len() {
            picked.push(i);
            if picked.len() == d {
                break;
            }
        } else {
            picked_rows.pop();
        }
    }
    if picked.len() < d {
        return Err(Error::Internal("phase one optimum has no full-rank tight set".into()));
    }
    lp.vertex(&picked)
}
