//! Smallest singular value over all square row-submatrices.

use shadowbench_core::numerics::{singular_values, Mat};
use shadowbench_core::polytope::binomial;

use super::{ensemble, in_range, matrix_spec, stream};
use crate::config::ExperimentConfig;
use crate::error::{config_err, Result};
use crate::report::{Check, Report};
use crate::runner::run_trials;
use crate::stats::TrialStats;

const KEYS: &[&str] = &["n", "d", "trials", "ensemble", "min_floor"];

pub const HEADER: &[&str] = &["trial", "seed_index", "n", "d", "ensemble", "min_lambda", "scaled_min", "collapse"];

/// Budget on `C(n, d)` per trial.
pub const SUBSET_BUDGET: u128 = 100_000;

/// `min` over all `d`-row subsets `S` of `lambda_min(A_S)` for an `n x d` matrix.
pub fn min_submatrix_singular_value(a: &Mat) -> Result<f64> {
    let (n, d) = (a.rows(), a.cols());
    if d == 0 || d > n {
        return Err(config_err(format!("need 1 <= d <= n, got a {n} x {d} matrix")));
    }
    if binomial(n, d) > SUBSET_BUDGET {
        return Err(config_err(format!("C({n}, {d}) exceeds {SUBSET_BUDGET} subsets")));
    }
    let mut idx: Vec<usize> = (0..d).collect();
    let mut best = f64::INFINITY;
    loop {
        best = best.min(singular_values(&a.select_rows(&idx))?.lambda_min);
        // Next combination in lexicographic order.
        let Some(p) = (0..d).rev().find(|&p| idx[p] < n - d + p) else {
            return Ok(best);
        };
        idx[p] += 1;
        for q in p + 1..d {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.check_keys(KEYS)?;
    let n = cfg.require_usize("n")?;
    let d = cfg.require_usize("d")?;
    if d == 0 || d > n {
        return Err(config_err(format!("need 1 <= d <= n, got n = {n}, d = {d}")));
    }
    if binomial(n, d) > SUBSET_BUDGET {
        return Err(config_err(format!(
            "C({n}, {d}) = {} exceeds {SUBSET_BUDGET} subsets per trial",
            binomial(n, d)
        )));
    }
    let trials = in_range("trials", cfg.usize_or("trials", 100)?, 1, 1000)?;
    let kind = ensemble(cfg)?;
    let floor = cfg.f64_or("min_floor", 1e-13)?;
    let spec = matrix_spec(kind, n, d);
    let s = stream(cfg, &format!("{}/n={n}/d={d}", kind.name()));
    let results = run_trials(cfg, trials, |i| min_submatrix_singular_value(&spec.sample(&mut s.at(i as u64).rng())?))?;

    let rn = (n as f64).sqrt();
    let mut report = Report::new(cfg.experiment, HEADER);
    let mut mins = Vec::new();
    let mut collapses = 0;
    for (i, r) in results {
        let m = r?;
        let collapse = m < 1e-12;
        collapses += usize::from(collapse);
        report.push_row(vec![
            report.rows.len().into(),
            i.into(),
            n.into(),
            d.into(),
            kind.name().into(),
            m.into(),
            (rn * m).into(),
            collapse.into(),
        ]);
        mins.push(m);
    }
    let below = mins.iter().filter(|&&m| !(m > floor)).count();
    let mut st = TrialStats::from_values(&mins).with_violations(below);
    if collapses > 0 {
        st.flags.insert("collapse".into(), collapses);
    }
    report
        .stats
        .push(("scaled_min".into(), TrialStats::from_values(&mins.iter().map(|m| rn * m).collect::<Vec<_>>())));
    report.stats.push(("min_lambda".into(), st));
    report.checks.push(Check::new(
        "all submatrix minima above floor",
        below as f64,
        format!("0 below {floor}"),
        below == 0,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_by_two_example() {
        let a = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let m = min_submatrix_singular_value(&a).unwrap();
        assert!((m - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn square_matrix_has_one_subset() {
        let a = Mat::from_rows(&[vec![2.0, 1.0], vec![0.5, 3.0]]).unwrap();
        let m = min_submatrix_singular_value(&a).unwrap();
        assert_eq!(m, singular_values(&a).unwrap().lambda_min);
    }
}
