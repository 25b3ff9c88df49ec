//! Probability that a random sign matrix is singular: exact enumeration for
//! tiny n, Monte Carlo otherwise. Singularity is decided in exact integer
//! arithmetic whenever the size allows it.

use shadowbench_core::ensembles::MatrixKind;
use shadowbench_core::numerics::{exact_integer_det, singular_values, Mat, MAX_DET_DIM};

use super::{in_range, matrix_spec, stream};
use crate::config::ExperimentConfig;
use crate::error::{config_err, Result, RunError};
use crate::report::{Check, Report};
use crate::runner::{run_indices, run_trials};
use crate::stats::TrialStats;

const KEYS: &[&str] = &["n", "mode", "trials", "long_run", "agree_slack_se"];

pub const HEADER: &[&str] = &["n", "mode", "seed_label", "singular", "total", "probability", "std_error"];

/// Largest size enumerated by default, and with `long_run`.
pub const EXACT_MAX: usize = 4;
pub const EXACT_MAX_LONG: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Exact,
    MonteCarlo,
    Both,
}

/// Count singular matrices among all `2^(n^2)` sign matrices.
pub fn exact_count(cfg: &ExperimentConfig, n: usize) -> Result<(u64, u64)> {
    let total: u64 = 1 << (n * n);
    let chunks: u64 = 256.min(total);
    let per = total / chunks;
    let counts = run_indices(cfg, (0..chunks as usize).collect(), |c| -> Result<u64> {
        let mut singular = 0;
        for mask in c as u64 * per..(c as u64 + 1) * per {
            let m = Mat::from_fn(n, n, |i, j| if mask >> (i * n + j) & 1 == 1 { -1.0 } else { 1.0 })?;
            if exact_integer_det(&m)? == 0 {
                singular += 1;
            }
        }
        Ok(singular)
    })?;
    let mut singular = 0;
    for (_, c) in counts {
        singular += c?;
    }
    Ok((singular, total))
}

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.check_keys(KEYS)?;
    let ns: Vec<usize> = cfg.list("n")?.unwrap_or_else(|| vec![2, 3, 4]);
    let mode = match cfg.str_or("mode", "exact") {
        "exact" => Mode::Exact,
        "monte-carlo" | "mc" => Mode::MonteCarlo,
        "both" => Mode::Both,
        other => return Err(config_err(format!("mode must be exact, monte-carlo or both, got {other:?}"))),
    };
    let trials = cfg.usize_or("trials", 100_000)?;
    let long_run = cfg.bool_or("long_run", false)?;
    let k = cfg.f64_or("agree_slack_se", 3.0)?;
    if ns.is_empty() {
        return Err(config_err("singularity needs at least one n"));
    }
    let exact_max = if long_run { EXACT_MAX_LONG } else { EXACT_MAX };

    let mut report = Report::new(cfg.experiment, HEADER);
    let mut exact_ps: Vec<(usize, u64, u64)> = Vec::new();
    for &n in &ns {
        in_range("n", n, 1, 50)?;
        let mut exact_p = None;
        if mode != Mode::MonteCarlo {
            if n > exact_max {
                return Err(RunError::Budget(format!(
                    "exact enumeration of 2^{} sign matrices is beyond the budget (n <= {exact_max}{}); \
                     use mode = monte-carlo",
                    n * n,
                    if long_run { "" } else { ", or n = 5 with long_run = true" }
                )));
            }
            let (s, t) = exact_count(cfg, n)?;
            report.push_row(vec![
                n.into(),
                "exact".into(),
                "".into(),
                (s as usize).into(),
                (t as usize).into(),
                (s as f64 / t as f64).into(),
                0.0.into(),
            ]);
            report.metrics.push((format!("exact p({n})"), s as f64 / t as f64));
            exact_ps.push((n, s, t));
            exact_p = Some(s as f64 / t as f64);
        }
        if mode != Mode::Exact {
            if trials == 0 {
                return Err(config_err("trials must be positive"));
            }
            let label = format!("rademacher/n={n}");
            let s = stream(cfg, &label);
            let spec = matrix_spec(MatrixKind::Rademacher, n, n);
            let results = run_trials(cfg, trials, |i| -> Result<bool> {
                let a = spec.sample(&mut s.at(i as u64).rng())?;
                if n <= MAX_DET_DIM {
                    Ok(exact_integer_det(&a)? == 0)
                } else {
                    let r = singular_values(&a)?;
                    Ok(r.lambda_min <= 1e-10 * r.lambda_max)
                }
            })?;
            let mut hits = 0;
            for (_, r) in &results {
                if *r.as_ref().map_err(|e| RunError::Assertion(e.to_string()))? {
                    hits += 1;
                }
            }
            let total = results.len();
            let (p, se) = TrialStats::frequency(hits, total);
            report.push_row(vec![
                n.into(),
                "monte-carlo".into(),
                format!("{}/{label}", cfg.experiment).into(),
                hits.into(),
                total.into(),
                p.into(),
                se.into(),
            ]);
            report.metrics.push((format!("monte-carlo p({n})"), p));
            report.metrics.push((format!("monte-carlo se({n})"), se));
            if n > MAX_DET_DIM {
                report.notes.push(format!("n = {n}: singularity decided numerically (lambda_min <= 1e-10 lambda_max)"));
            }
            if let Some(pe) = exact_p {
                report.checks.push(Check::new(
                    format!("monte-carlo agrees with exact (n={n})"),
                    (p - pe).abs(),
                    format!("<= {k} se = {}", k * se),
                    (p - pe).abs() <= k * se,
                ));
            }
        }
    }
    if let Some(&(_, s, t)) = exact_ps.iter().find(|(n, _, _)| *n == 2) {
        report.checks.push(Check::new("exact p(2)", s as f64 / t as f64, "= 1/2", 2 * s == t));
    }
    let mut sorted = exact_ps.clone();
    sorted.sort_by_key(|&(n, _, _)| n);
    if sorted.len() > 1 {
        let decreasing = sorted
            .windows(2)
            .all(|w| (w[0].1 as u128) * (w[1].2 as u128) > (w[1].1 as u128) * (w[0].2 as u128));
        report.checks.push(Check::new(
            "exact probabilities strictly decrease in n",
            f64::from(u8::from(decreasing)),
            "1",
            decreasing,
        ));
    }
    Ok(report)
}
