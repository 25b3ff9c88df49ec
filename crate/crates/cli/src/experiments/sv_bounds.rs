//! Extreme singular values of tall (or square) random matrices.

use shadowbench_core::ensembles::MatrixKind;
use shadowbench_core::numerics::singular_values;

use super::{ensemble, in_range, matrix_spec, stream};
use crate::config::ExperimentConfig;
use crate::error::{config_err, Result};
use crate::report::{Check, Report};
use crate::runner::run_trials;
use crate::stats::TrialStats;

const KEYS: &[&str] = &["n", "d", "trials", "t", "ensemble", "conc_slack_se", "scale_window", "max_scale_ratio"];

pub const HEADER: &[&str] = &[
    "trial",
    "seed_index",
    "n",
    "d",
    "ensemble",
    "lambda_min",
    "lambda_max",
    "ratio_min",
    "scaled_lambda_min",
];

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.check_keys(KEYS)?;
    let ns: Vec<usize> = cfg.list("n")?.ok_or_else(|| config_err("sv-bounds needs n"))?;
    let d_fixed: Option<usize> = if cfg.contains("d") { Some(cfg.require_usize("d")?) } else { None };
    let trials = cfg.usize_or("trials", 200)?;
    if trials < 100 {
        return Err(config_err(format!("sv-bounds needs at least 100 trials, got {trials}")));
    }
    let ts: Vec<f64> = cfg.list("t")?.unwrap_or_else(|| vec![2.0]);
    let kind = ensemble(cfg)?;
    let conc_k = cfg.f64_or("conc_slack_se", 3.0)?;
    let window: Vec<f64> = cfg.list("scale_window")?.unwrap_or_else(|| vec![0.1, 10.0]);
    if window.len() != 2 {
        return Err(config_err("scale_window needs two numbers"));
    }
    let max_ratio = cfg.f64_or("max_scale_ratio", 3.0)?;
    if ns.is_empty() {
        return Err(config_err("sv-bounds needs at least one n"));
    }

    let mut report = Report::new(cfg.experiment, HEADER);
    let mut square_medians = Vec::new();
    for &n in &ns {
        in_range("n", n, 1, 2000)?;
        let d = d_fixed.unwrap_or(n);
        if d == 0 || d > n {
            return Err(config_err(format!("need 1 <= d <= n, got n = {n}, d = {d}")));
        }
        let (rn, rd) = ((n as f64).sqrt(), (d as f64).sqrt());
        let spec = matrix_spec(kind, n, d);
        let s = stream(cfg, &format!("{}/n={n}/d={d}", kind.name()));
        let results = run_trials(cfg, trials, |i| -> Result<(f64, f64)> {
            let r = singular_values(&spec.sample(&mut s.at(i as u64).rng())?)?;
            Ok((r.lambda_min, r.lambda_max))
        })?;
        let mut mins = Vec::new();
        let mut maxs = Vec::new();
        for (i, r) in results {
            let (lo, hi) = r?;
            let ratio = if n > d { lo / (rn - rd) } else { f64::NAN };
            report.push_row(vec![
                report.rows.len().into(),
                i.into(),
                n.into(),
                d.into(),
                kind.name().into(),
                lo.into(),
                hi.into(),
                ratio.into(),
                (rn * lo).into(),
            ]);
            mins.push(lo);
            maxs.push(hi);
        }
        let tag = format!("n={n} d={d}");
        let min_st = TrialStats::from_values(&mins);
        let max_st = TrialStats::from_values(&maxs);
        if n > d {
            let ratios: Vec<f64> = mins.iter().map(|l| l / (rn - rd)).collect();
            report.stats.push((format!("ratio_min {tag}"), TrialStats::from_values(&ratios)));
            if kind == MatrixKind::Gaussian {
                report.checks.push(Check::new(
                    format!("mean lambda_max in [sqrt n, sqrt n + sqrt d] ({tag})"),
                    max_st.mean,
                    format!("[{rn}, {}]", rn + rd),
                    max_st.mean >= rn && max_st.mean <= rn + rd,
                ));
                report.checks.push(Check::new(
                    format!("mean lambda_min in [sqrt n - sqrt d, sqrt n] ({tag})"),
                    min_st.mean,
                    format!("[{}, {rn}]", rn - rd),
                    min_st.mean >= rn - rd && min_st.mean <= rn,
                ));
                for &t in &ts {
                    let out = mins
                        .iter()
                        .zip(&maxs)
                        .filter(|(&lo, &hi)| lo < rn - rd - t || hi > rn + rd + t)
                        .count();
                    let (freq, se) = TrialStats::frequency(out, mins.len());
                    let bound = 2.0 * (-t * t / 2.0).exp();
                    report.metrics.push((format!("exceedance t={t} {tag}"), freq));
                    report.checks.push(Check::new(
                        format!("P(outside [sqrt n - sqrt d - t, sqrt n + sqrt d + t]) t={t} ({tag})"),
                        freq,
                        format!("{} (2 exp(-t^2/2) + {conc_k} se)", bound + conc_k * se),
                        freq <= bound + conc_k * se,
                    ));
                }
            }
        } else {
            let scaled: Vec<f64> = mins.iter().map(|l| rn * l).collect();
            let st = TrialStats::from_values(&scaled);
            let med = st.median();
            square_medians.push(med);
            report.checks.push(Check::new(
                format!("median sqrt(n) lambda_min in window ({tag})"),
                med,
                format!("[{}, {}]", window[0], window[1]),
                med >= window[0] && med <= window[1],
            ));
            report.stats.push((format!("scaled_lambda_min {tag}"), st));
        }
        report.stats.push((format!("lambda_min {tag}"), min_st));
        report.stats.push((format!("lambda_max {tag}"), max_st));
    }
    if square_medians.len() > 1 {
        let hi = square_medians.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = square_medians.iter().copied().fold(f64::INFINITY, f64::min);
        report.metrics.push(("median spread".into(), hi / lo));
        report.checks.push(Check::new(
            "spread of median sqrt(n) lambda_min across n",
            hi / lo,
            format!("< {max_ratio}"),
            hi / lo < max_ratio,
        ));
    }
    Ok(report)
}
