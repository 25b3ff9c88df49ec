//! Edge counts of planar sections of smoothed Gaussian polytopes.

use std::f64::consts::TAU;

use shadowbench_core::ensembles::{read_centers, sample_smoothed_polytope, sigma_cap, SmoothedPolytopeSpec};
use shadowbench_core::numerics::vector::norm;
use shadowbench_core::polytope::{binomial, perimeter, section_polygon_with_budget, Plane};
use shadowbench_core::Error;

use super::{gaussian_vec, in_range, positive, stream};
use crate::config::ExperimentConfig;
use crate::error::{config_err, Result, RunError};
use crate::report::{Check, Report};
use crate::runner::run_trials;
use crate::stats::TrialStats;

const KEYS: &[&str] = &["n", "d", "sigma", "trials", "random_plane", "budget", "centers", "max_growth"];

/// Facet-enumeration budget. Large enough for n = 256 at d = 3.
pub const DEFAULT_BUDGET: usize = 10_000_000;

pub const HEADER: &[&str] = &[
    "trial",
    "seed_index",
    "n",
    "d",
    "sigma",
    "sigma_valid",
    "edges",
    "empty",
    "perimeter",
    "max_norm",
    "degenerate_flags",
];

struct Outcome {
    edges: Option<usize>,
    perimeter: f64,
    max_norm: f64,
    flags: String,
}

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.check_keys(KEYS)?;
    let ns: Vec<usize> = cfg.list("n")?.ok_or_else(|| config_err("section-size needs n"))?;
    let d = in_range("d", cfg.usize_or("d", 3)?, 3, 6)?;
    let sigma = positive("sigma", cfg.require_f64("sigma")?)?;
    let trials = cfg.usize_or("trials", 200)?;
    let random_plane = cfg.bool_or("random_plane", false)?;
    let budget = cfg.usize_or("budget", DEFAULT_BUDGET)?;
    let max_growth = cfg.f64_or("max_growth", 2.0)?;
    if ns.is_empty() || trials == 0 {
        return Err(config_err("section-size needs at least one n and one trial"));
    }
    for &n in &ns {
        if n < d + 1 {
            return Err(config_err(format!("n = {n} must be at least d + 1 = {}", d + 1)));
        }
        in_range("n", n, d + 1, 512)?;
        if binomial(n, d) > budget as u128 {
            return Err(config_err(format!(
                "C({n}, {d}) = {} exceeds the facet budget {budget}",
                binomial(n, d)
            )));
        }
    }
    let file_centers = match cfg.params().get("centers") {
        Some(path) => {
            let file = std::fs::File::open(path).map_err(|e| config_err(format!("cannot read {path}: {e}")))?;
            let c = read_centers(std::io::BufReader::new(file))?;
            let need = ns.iter().copied().max().unwrap_or(0);
            if c.len() < need || c.iter().any(|p| p.len() != d) {
                return Err(config_err(format!("{path} needs at least {need} centers of dimension {d}")));
            }
            Some(c)
        }
        None => None,
    };

    let mut report = Report::new(cfg.experiment, HEADER);
    let mut means = Vec::new();
    for &n in &ns {
        let centers = match &file_centers {
            Some(c) => c[..n].to_vec(),
            None => SmoothedPolytopeSpec::on_sphere(n, d, sigma, &mut stream(cfg, "centers").at(n as u64).rng())?
                .centers,
        };
        let spec = SmoothedPolytopeSpec::new(sigma, centers)?;
        let points = stream(cfg, &format!("points/n={n}"));
        let planes = stream(cfg, &format!("plane/n={n}"));
        let results = run_trials(cfg, trials, |i| -> Result<Outcome> {
            let k = sample_smoothed_polytope(&spec, &mut points.at(i as u64).rng())?.polytope;
            let plane = if random_plane {
                let mut rng = planes.at(i as u64).rng();
                Plane::from_basis(&gaussian_vec(&mut rng, d)?, &gaussian_vec(&mut rng, d)?)?
            } else {
                Plane::coordinate(d)
            };
            let max_norm = k.points().iter().map(|p| norm(p)).fold(0.0, f64::max);
            match section_polygon_with_budget(&k, &plane, budget as u128) {
                Ok(s) => {
                    let mut flags = Vec::new();
                    if s.diagnostics.merged_vertices > 0 {
                        flags.push("merged");
                    }
                    if s.diagnostics.collinear_dropped > 0 {
                        flags.push("collinear");
                    }
                    if s.diagnostics.touching {
                        flags.push("touching");
                    }
                    Ok(Outcome {
                        edges: Some(s.edge_count()),
                        perimeter: perimeter(&s.polygon),
                        max_norm,
                        flags: flags.join("|"),
                    })
                }
                Err(Error::BudgetExceeded { .. }) => Ok(Outcome {
                    edges: None,
                    perimeter: f64::NAN,
                    max_norm,
                    flags: "budget".into(),
                }),
                Err(e) => Err(RunError::from(e)),
            }
        })?;

        let valid = sigma <= sigma_cap(n, d);
        let mut edges = Vec::new();
        let mut nonempty = Vec::new();
        let mut perimeters = Vec::new();
        let mut violations = 0;
        let mut flags = TrialStats::from_values(&[]).flags;
        for (i, out) in results {
            let out = out?;
            if let Some(e) = out.edges {
                edges.push(e as f64);
                if e > 0 {
                    nonempty.push(e as f64);
                }
                perimeters.push(out.perimeter);
                if out.perimeter > TAU * out.max_norm * (1.0 + 1e-12) {
                    violations += 1;
                }
            }
            for f in out.flags.split('|').filter(|f| !f.is_empty()) {
                *flags.entry(f.to_string()).or_insert(0) += 1;
            }
            if out.edges == Some(0) {
                *flags.entry("empty".to_string()).or_insert(0) += 1;
            }
            report.push_row(vec![
                report.rows.len().into(),
                i.into(),
                n.into(),
                d.into(),
                sigma.into(),
                valid.into(),
                out.edges.into(),
                out.edges.map(|e| e == 0).into(),
                out.perimeter.into(),
                out.max_norm.into(),
                out.flags.into(),
            ]);
        }
        let mut st = TrialStats::from_values(&edges).with_violations(violations);
        st.flags = flags;
        means.push((n, st.mean));
        report.stats.push((format!("edges n={n}"), st));
        report
            .stats
            .push((format!("edges|nonempty n={n}"), TrialStats::from_values(&nonempty)));
        report
            .stats
            .push((format!("perimeter n={n}"), TrialStats::from_values(&perimeters).with_violations(violations)));
        report.checks.push(Check::new(
            format!("perimeter <= 2 pi max_norm (n={n})"),
            violations as f64,
            "0 violations",
            violations == 0,
        ));
        report.metrics.push((format!("sigma_cap n={n}"), sigma_cap(n, d)));
    }
    if let (Some(&(n0, m0)), Some(&(n1, m1))) = (means.first(), means.last()) {
        if ns.len() > 1 {
            let growth = m1 / m0;
            report.metrics.push((format!("growth n={n0}->{n1}"), growth));
            report.checks.push(Check::new(
                format!("mean edges growth n={n0}->{n1}"),
                growth,
                format!("< {max_growth}"),
                growth < max_growth,
            ));
        }
    }
    report.notes.push(format!(
        "plane: {}; empty sections count as 0 edges (conditional means reported separately)",
        if random_plane { "random per trial" } else { "span(e1, e2)" }
    ));
    Ok(report)
}
