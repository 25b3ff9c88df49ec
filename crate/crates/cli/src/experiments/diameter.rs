//! Graph diameters of polars of smoothed Gaussian polytopes.

use shadowbench_core::ensembles::{sample_smoothed_polytope, SmoothedPolytopeSpec};
use shadowbench_core::polytope::{enumerate_facets, graph_diameter, vertex_edge_graph, HPolytope};

use super::{in_range, positive, stream};
use crate::config::ExperimentConfig;
use crate::error::{config_err, Result};
use crate::report::Report;
use crate::runner::run_trials;
use crate::stats::TrialStats;

const KEYS: &[&str] = &["n", "d", "sigma", "trials"];

pub const HEADER: &[&str] = &[
    "trial",
    "seed_index",
    "n",
    "d",
    "sigma",
    "status",
    "vertices",
    "edges",
    "diameter",
    "hirsch",
    "kalai_kleitman",
];

struct Outcome {
    status: &'static str,
    graph: Option<(usize, usize, usize)>,
}

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.check_keys(KEYS)?;
    let d = in_range("d", cfg.usize_or("d", 3)?, 3, 4)?;
    let n = cfg.usize_or("n", 8)?;
    if n < d + 1 {
        return Err(config_err(format!("n = {n} must be at least d + 1 = {}", d + 1)));
    }
    in_range("n", n, d + 1, 14)?;
    let sigma = positive("sigma", cfg.f64_or("sigma", 0.1)?)?;
    let trials = cfg.usize_or("trials", 100)?;
    if trials == 0 {
        return Err(config_err("trials must be positive"));
    }
    let spec = SmoothedPolytopeSpec::on_sphere(n, d, sigma, &mut stream(cfg, "centers").at(n as u64).rng())?;
    let s = stream(cfg, &format!("points/n={n}/d={d}"));
    let results = run_trials(cfg, trials, |i| -> Result<Outcome> {
        let k = sample_smoothed_polytope(&spec, &mut s.at(i as u64).rng())?.polytope;
        if !enumerate_facets(&k)?.contains_origin_strictly() {
            return Ok(Outcome {
                status: "origin-not-interior",
                graph: None,
            });
        }
        let p = HPolytope::canonical(k.points().to_vec())?;
        let g = vertex_edge_graph(&p)?;
        Ok(Outcome {
            status: "ok",
            graph: Some((g.vertices.len(), g.edge_count(), graph_diameter(&g)?)),
        })
    })?;

    let hirsch = n - d;
    let kk = (n as f64).powf((d as f64).log2() + 2.0);
    let mut report = Report::new(cfg.experiment, HEADER);
    let mut diams = Vec::new();
    let mut skipped = 0;
    let mut over_hirsch = 0;
    for (i, r) in results {
        let out = r?;
        let (v, e, diam) = match out.graph {
            Some((v, e, diam)) => (Some(v), Some(e), Some(diam)),
            None => (None, None, None),
        };
        if let Some(x) = diam {
            diams.push(x as f64);
            over_hirsch += usize::from(x > hirsch);
        } else {
            skipped += 1;
        }
        report.push_row(vec![
            report.rows.len().into(),
            i.into(),
            n.into(),
            d.into(),
            sigma.into(),
            out.status.into(),
            v.into(),
            e.into(),
            diam.into(),
            hirsch.into(),
            kk.into(),
        ]);
    }
    let mut st = TrialStats::from_values(&diams);
    if skipped > 0 {
        st.flags.insert("origin-not-interior".into(), skipped);
    }
    report.stats.push(("diameter".into(), st));
    report.metrics.push(("hirsch_exceedances".into(), over_hirsch as f64));
    report.notes.push("n - d (Hirsch) and n^(log2 d + 2) are reference columns, not asserted".into());
    Ok(report)
}
