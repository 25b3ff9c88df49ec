//! Experiment results: CSV rows plus summaries and checks.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::Result;
use crate::stats::TrialStats;

/// One CSV field.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    /// Floats carry 17 significant digits so the CSV round-trips exactly.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) if v.is_nan() => "NaN".to_string(),
            Cell::Float(v) if v.is_infinite() => if *v > 0.0 { "inf" } else { "-inf" }.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// A pass/fail comparison against a configured threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, bound: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            value,
            bound: bound.into(),
            passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub experiment: ExperimentKind,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Labelled aggregates, e.g. `("edges n=16", stats)`.
    pub stats: Vec<(String, TrialStats)>,
    pub metrics: Vec<(String, f64)>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(experiment: ExperimentKind, header: &[&str]) -> Self {
        Self {
            experiment,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            stats: Vec::new(),
            metrics: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn stat(&self, label: &str) -> Option<&TrialStats> {
        self.stats.iter().find(|(l, _)| l == label).map(|(_, s)| s)
    }

    pub fn metric(&self, label: &str) -> Option<f64> {
        self.metrics.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn summary(&self) -> String {
        let mut s = format!("# {}\n", self.experiment);
        for (label, st) in &self.stats {
            let _ = writeln!(s, "{label}: {}", st.describe());
        }
        for (label, v) in &self.metrics {
            let _ = writeln!(s, "{label} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "[{}] {}: {} (bound {})",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.value,
                c.bound
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

pub const DERIVATION_RULE: &str = "trial i of group g draws from ChaCha8 stream i keyed by \
splitmix64(seed ^ rotl(fnv1a(label), 29)), label = \"<experiment>/<group>\"; \
the seed_index column is i";

/// `<out>.manifest`: everything needed to re-run the experiment.
pub fn write_manifest(path: &Path, cfg: &ExperimentConfig, report: &Report, elapsed: Duration) -> Result<()> {
    let mut s = String::new();
    let _ = writeln!(s, "version = {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "master_seed = {}", cfg.master_seed);
    let _ = writeln!(s, "derivation = {DERIVATION_RULE}");
    let _ = writeln!(s, "duration_seconds = {:.3}", elapsed.as_secs_f64());
    s.push_str("\n[config]\n");
    s.push_str(&cfg.echo());
    s.push_str("\n[summary]\n");
    s.push_str(&report.summary());
    std::fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, std::f64::consts::PI] {
            let s = Cell::Float(v).render();
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(Cell::from(None::<f64>).render(), "");
        assert_eq!(Cell::Float(f64::INFINITY).render(), "inf");
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut r = Report::new(ExperimentKind::KmCube, &["a", "b"]);
        r.push_row(vec![1usize.into(), "x,y".into()]);
        assert_eq!(r.csv_string().unwrap(), "a,b\n1,\"x,y\"\n");
    }
}
