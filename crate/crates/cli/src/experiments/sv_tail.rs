//! Lower tail of the smallest singular value of square random matrices.

use shadowbench_core::ensembles::MatrixKind;
use shadowbench_core::numerics::{exact_integer_det, singular_values, Mat, MAX_DET_DIM};

use super::{ensemble, in_range, matrix_spec, positive, stream};
use crate::config::ExperimentConfig;
use crate::error::{config_err, Result};
use crate::report::{Check, Report};
use crate::runner::run_trials;
use crate::stats::TrialStats;

const KEYS: &[&str] = &[
    "n",
    "eps",
    "trials",
    "ensemble",
    "center",
    "sigma",
    "edelman_window",
    "sst_constant",
    "sst_slack_se",
    "max_singular_freq",
];

pub const HEADER: &[&str] = &[
    "trial",
    "seed_index",
    "n",
    "ensemble",
    "center",
    "sigma",
    "lambda_min",
    "scaled_lambda_min",
    "exact_singular",
];

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.check_keys(KEYS)?;
    let n = in_range("n", cfg.usize_or("n", 50)?, 1, 200)?;
    let eps: Vec<f64> = cfg.list("eps")?.unwrap_or_else(|| vec![0.05, 0.1, 0.2]);
    if eps.is_empty() || eps.iter().any(|&e| !(e >= 0.0)) {
        return Err(config_err("eps must be a nonempty list of non-negative numbers"));
    }
    let trials = cfg.usize_or("trials", 20_000)?;
    if trials < 1000 {
        return Err(config_err(format!("sv-tail needs at least 1000 trials, got {trials}")));
    }
    let kind = ensemble(cfg)?;
    let center = cfg.f64_or("center", 0.0)?;
    let sigmas: Vec<f64> = cfg.list("sigma")?.unwrap_or_else(|| vec![1.0]);
    for &s in &sigmas {
        positive("sigma", s)?;
    }
    if kind != MatrixKind::Gaussian && sigmas.iter().any(|&s| s != 1.0) {
        return Err(config_err("sigma applies to the gaussian ensemble only"));
    }
    let plain = kind == MatrixKind::Gaussian && center == 0.0 && sigmas == [1.0];
    let edelman: Option<f64> = if cfg.contains("edelman_window") || plain {
        Some(cfg.f64_or("edelman_window", 2.0)?)
    } else {
        None
    };
    let sst = kind == MatrixKind::Gaussian && !plain;
    let sst_c = cfg.f64_or("sst_constant", 1.823)?;
    let sst_k = cfg.f64_or("sst_slack_se", 3.0)?;
    let max_singular: Option<f64> = if cfg.contains("max_singular_freq") {
        Some(cfg.f64_or("max_singular_freq", 0.0)?)
    } else {
        None
    };
    let exact = kind == MatrixKind::Rademacher && n <= MAX_DET_DIM;
    let rn = (n as f64).sqrt();

    let mut report = Report::new(cfg.experiment, HEADER);
    for &sigma in &sigmas {
        let label = format!("{}/n={n}/center={center}/sigma={sigma}", kind.name());
        let s = stream(cfg, &label);
        let mut spec = matrix_spec(kind, n, n);
        if center != 0.0 {
            spec = spec.with_center(Mat::from_fn(n, n, |_, _| center)?);
        }
        spec = spec.with_sigma(sigma);
        let results = run_trials(cfg, trials, |i| -> Result<(f64, Option<bool>)> {
            let a = spec.sample(&mut s.at(i as u64).rng())?;
            let lmin = singular_values(&a)?.lambda_min;
            let singular = if exact { Some(exact_integer_det(&a)? == 0) } else { None };
            Ok((lmin, singular))
        })?;
        let mut lmins = Vec::with_capacity(results.len());
        let mut singular_flags = Vec::with_capacity(results.len());
        for (i, r) in results {
            let (lmin, singular) = r?;
            report.push_row(vec![
                report.rows.len().into(),
                i.into(),
                n.into(),
                kind.name().into(),
                center.into(),
                sigma.into(),
                lmin.into(),
                (rn * lmin).into(),
                singular.into(),
            ]);
            lmins.push(lmin);
            singular_flags.push(singular);
        }
        let total = lmins.len();
        report
            .stats
            .push((format!("scaled_lambda_min sigma={sigma}"), TrialStats::from_values(&lmins.iter().map(|l| rn * l).collect::<Vec<_>>())));
        for &e in &eps {
            let hits = if e == 0.0 {
                singular_flags
                    .iter()
                    .zip(&lmins)
                    .filter(|(s, l)| s.unwrap_or(**l <= 1e-12 * rn))
                    .count()
            } else {
                lmins.iter().filter(|&&l| l <= e / rn).count()
            };
            let (freq, se) = TrialStats::frequency(hits, total);
            report.metrics.push((format!("freq eps={e} sigma={sigma}"), freq));
            report.metrics.push((format!("se eps={e} sigma={sigma}"), se));
            if let Some(w) = edelman.filter(|_| e > 0.0) {
                report.checks.push(Check::new(
                    format!("P(lambda_min <= eps/sqrt(n)) in [eps/{w}, {w} eps], eps={e}"),
                    freq,
                    format!("[{}, {}]", e / w, e * w),
                    freq >= e / w && freq <= e * w,
                ));
            }
            if sst && e > 0.0 {
                let bound = sst_c * e / sigma;
                report.metrics.push((format!("sst_bound eps={e} sigma={sigma}"), bound));
                report.checks.push(Check::new(
                    format!("P(lambda_min <= eps/sqrt(n)) <= C eps/sigma + k se, eps={e}, sigma={sigma}"),
                    freq,
                    format!("{} (C = {sst_c}, k = {sst_k})", bound + sst_k * se),
                    freq <= bound + sst_k * se,
                ));
            }
            if let Some(m) = max_singular.filter(|_| e == 0.0) {
                report.checks.push(Check::new(
                    format!("singular frequency (sigma={sigma})"),
                    freq,
                    format!("< {m}"),
                    freq < m,
                ));
            }
        }
    }
    Ok(report)
}
