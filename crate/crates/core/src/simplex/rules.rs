//! Pivot rules.
//!
//! A rule looks at the current basis and names the tight row to release; the
//! engine then runs the ratio test and performs the pivot. Ties are broken
//! towards the lowest row index so that every rule is deterministic.

use super::basis::BasisState;
use crate::numerics::vector::norm;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// No improving move: the current vertex is terminal for the rule.
    Optimal,
    /// Release the row at this basis position.
    Release(usize),
}

pub trait PivotRule {
    fn name(&self) -> &'static str;

    fn select(&mut self, basis: &BasisState<'_>) -> Result<Selection>;
}

impl<R: PivotRule + ?Sized> PivotRule for &mut R {
    fn name(&self) -> &'static str {
        (**self).name()
    }

    fn select(&mut self, basis: &BasisState<'_>) -> Result<Selection> {
        (**self).select(basis)
    }
}

fn improving(basis: &BasisState<'_>) -> (Vec<f64>, Vec<usize>) {
    let z = basis.lp().z();
    let y = basis.multipliers(z);
    let zn = norm(z);
    let cands = (0..y.len()).filter(|&p| basis.is_improving(&y, p, zn)).collect();
    (y, cands)
}

/// Largest-coefficient rule: release the row with the most negative
/// multiplier, i.e. the largest reduced cost in the slack formulation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dantzig;

impl PivotRule for Dantzig {
    fn name(&self) -> &'static str {
        "dantzig"
    }

    fn select(&mut self, basis: &BasisState<'_>) -> Result<Selection> {
        let (y, cands) = improving(basis);
        let rows = basis.rows();
        Ok(cands
            .into_iter()
            .min_by(|&p, &q| y[p].total_cmp(&y[q]).then(rows[p].cmp(&rows[q])))
            .map_or(Selection::Optimal, Selection::Release))
    }
}

/// Move to the neighbouring vertex with the largest objective value. An
/// improving unbounded edge beats every bounded one; equal objectives go to
/// the lowest-index entering row.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreatestImprovement;

impl PivotRule for GreatestImprovement {
    fn name(&self) -> &'static str {
        "greatest-improvement"
    }

    fn select(&mut self, basis: &BasisState<'_>) -> Result<Selection> {
        let (_, cands) = improving(basis);
        let z = basis.lp().z();
        let mut best: Option<(usize, f64, usize)> = None;
        for p in cands {
            let step = basis.step(p);
            let (gain, entering) = match step.entering {
                None => (f64::INFINITY, usize::MAX),
                Some(j) => {
                    let dz: f64 = z.iter().zip(&step.direction).map(|(a, b)| a * b).sum();
                    (dz * step.length, j)
                }
            };
            let better = match best {
                None => true,
                Some((_, g, e)) => {
                    let tol = 1e-12 * (1.0 + g.abs().min(gain.abs()));
                    if gain.is_infinite() && g.is_infinite() {
                        entering < e
                    } else if (gain - g).abs() <= tol {
                        entering < e
                    } else {
                        gain > g
                    }
                }
            };
            if better {
                best = Some((p, gain, entering));
            }
        }
        Ok(best.map_or(Selection::Optimal, |b| Selection::Release(b.0)))
    }
}

/// Release the improving row with the lowest index.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bland;

impl PivotRule for Bland {
    fn name(&self) -> &'static str {
        "bland"
    }

    fn select(&mut self, basis: &BasisState<'_>) -> Result<Selection> {
        let (_, cands) = improving(basis);
        let rows = basis.rows();
        Ok(cands
            .into_iter()
            .min_by_key(|&p| rows[p])
            .map_or(Selection::Optimal, Selection::Release))
    }
}
