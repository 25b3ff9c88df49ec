//! Self-test: the largest-coefficient rule on the Klee–Minty cube.

use shadowbench_core::ensembles::{klee_minty, KleeMintySpec};
use shadowbench_core::simplex::{solve_with_rule, Dantzig, Termination};

use super::in_range;
use crate::config::ExperimentConfig;
use crate::error::{config_err, Result};
use crate::report::{Cell, Check, Report};

const KEYS: &[&str] = &["d", "epsilon"];

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.check_keys(KEYS)?;
    let d = in_range("d", cfg.usize_or("d", 3)?, 2, 12)?;
    let eps = cfg.f64_or("epsilon", 1.0 / 3.0)?;
    let spec = KleeMintySpec::new(d, eps).map_err(|e| config_err(e.to_string()))?;
    let km = klee_minty(&spec)?;
    let out = solve_with_rule(&km.lp, &km.start, Dantzig, 10 << d)?;

    let mut header = vec!["step".to_string(), "tight_rows".to_string(), "objective".to_string()];
    header.extend((1..=d).map(|j| format!("x{j}")));
    let mut report = Report::new(cfg.experiment, &[]);
    report.header = header;
    for (step, v) in out.walk.vertices.iter().enumerate() {
        let mut row: Vec<Cell> = vec![
            step.into(),
            v.tight_rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ").into(),
            km.lp.objective(&v.x).into(),
        ];
        row.extend(v.x.iter().map(|&x| Cell::from(x)));
        report.push_row(row);
    }
    let pivots = out.walk.pivot_count;
    let distinct = out.walk.distinct_points(1e-9);
    let expected = 1usize << d;
    report.metrics.push(("pivots".into(), pivots as f64));
    report.metrics.push(("distinct_vertices".into(), distinct as f64));
    report.checks.push(Check::new(
        "walk terminates optimally",
        f64::from(u8::from(out.walk.terminated == Termination::Optimal)),
        "1",
        out.walk.terminated == Termination::Optimal,
    ));
    report.checks.push(Check::new(
        "pivot count",
        pivots as f64,
        format!("= {}", expected - 1),
        pivots == expected - 1,
    ));
    report.checks.push(Check::new(
        "distinct vertices",
        distinct as f64,
        format!("= {expected}"),
        distinct == expected,
    ));
    report.checks.push(Check::new(
        "consecutive bases adjacent",
        f64::from(u8::from(out.walk.check_adjacency(d))),
        "1",
        out.walk.check_adjacency(d),
    ));
    report.notes.push(format!(
        "rule: largest coefficient (Dantzig) from x = 0, epsilon = {eps}"
    ));
    Ok(report)
}
