//! Flat `key = value` configuration.
//!
//! ```text
//! # section-size sweep
//! experiment = section-size
//! n = 16, 64, 256
//! d = 3
//! sigma = 0.04
//! trials = 200
//! seed = 7
//! ```
//!
//! Later assignments override earlier ones; command-line flags are applied
//! on top of the file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{config_err, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentKind {
    SectionSize,
    ShadowWalk,
    KmCube,
    SvTail,
    SvBounds,
    Singularity,
    SubmatrixMin,
    Diameter,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 8] = [
        ExperimentKind::SectionSize,
        ExperimentKind::ShadowWalk,
        ExperimentKind::KmCube,
        ExperimentKind::SvTail,
        ExperimentKind::SvBounds,
        ExperimentKind::Singularity,
        ExperimentKind::SubmatrixMin,
        ExperimentKind::Diameter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SectionSize => "section-size",
            ExperimentKind::ShadowWalk => "shadow-walk",
            ExperimentKind::KmCube => "km-cube",
            ExperimentKind::SvTail => "sv-tail",
            ExperimentKind::SvBounds => "sv-bounds",
            ExperimentKind::Singularity => "singularity",
            ExperimentKind::SubmatrixMin => "submatrix-min",
            ExperimentKind::Diameter => "diameter",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "km" && *k == ExperimentKind::KmCube))
            .ok_or_else(|| format!("unknown experiment {s:?}"))
    }
}

/// One experiment run: its kind, parameters, seed and output location.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub master_seed: u64,
    pub output_path: Option<PathBuf>,
    /// Worker threads; `None` uses all cores. Never affects results.
    pub threads: Option<usize>,
    params: BTreeMap<String, String>,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self {
            experiment,
            master_seed: 0,
            output_path: None,
            threads: None,
            params: BTreeMap::new(),
        }
    }

    /// Parse `key = value` lines. `experiment` is required unless `fallback`
    /// names one.
    pub fn parse(text: &str, fallback: Option<ExperimentKind>) -> Result<Self> {
        let mut raw: BTreeMap<String, String> = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected `key = value`", lineno + 1)))?;
            let key = normalize_key(key);
            if key.is_empty() {
                return Err(config_err(format!("line {}: empty key", lineno + 1)));
            }
            raw.insert(key, value.trim().to_string());
        }
        let experiment = match raw.remove("experiment") {
            Some(name) => name.parse().map_err(config_err)?,
            None => fallback.ok_or_else(|| config_err("no experiment given"))?,
        };
        let mut cfg = Self::new(experiment);
        for (k, v) in raw {
            cfg.set(&k, &v)?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path, fallback: Option<ExperimentKind>) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, fallback)
    }

    /// Set (or override) one key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = normalize_key(key);
        let value = value.trim();
        match key.as_str() {
            "experiment" => self.experiment = value.parse().map_err(config_err)?,
            "seed" => {
                self.master_seed = value
                    .parse()
                    .map_err(|_| config_err(format!("seed must be a non-negative integer, got {value:?}")))?
            }
            "out" => self.output_path = Some(PathBuf::from(value)),
            "threads" => {
                let t: usize = value
                    .parse()
                    .map_err(|_| config_err(format!("threads must be a positive integer, got {value:?}")))?;
                if t == 0 {
                    return Err(config_err("threads must be at least 1"));
                }
                self.threads = Some(t);
            }
            _ => {
                self.params.insert(key, value.to_string());
            }
        }
        Ok(())
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.set(key, &value.to_string()).expect("valid override");
        self
    }

    pub fn params(&self) -> &BTreeMap<String, String> {
        &self.params
    }

    pub fn contains(&self, key: &str) -> bool {
        self.params.contains_key(key)
    }

    /// Reject keys that the experiment does not read (typos would otherwise
    /// be silently ignored).
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for key in self.params.keys() {
            if !allowed.contains(&key.as_str()) && key != "only_trial" {
                return Err(config_err(format!(
                    "unknown parameter {key:?} for {} (accepted: {})",
                    self.experiment,
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }

    fn parsed<T: FromStr>(&self, key: &str, what: &str) -> Result<Option<T>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| config_err(format!("{key} must be {what}, got {v:?}"))),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        Ok(self.parsed(key, "a non-negative integer")?.unwrap_or(default))
    }

    pub fn require_usize(&self, key: &str) -> Result<usize> {
        self.parsed(key, "a non-negative integer")?
            .ok_or_else(|| config_err(format!("{} needs parameter {key}", self.experiment)))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        let v = self.parsed::<f64>(key, "a number")?.unwrap_or(default);
        if !v.is_finite() {
            return Err(config_err(format!("{key} must be finite")));
        }
        Ok(v)
    }

    pub fn require_f64(&self, key: &str) -> Result<f64> {
        if !self.contains(key) {
            return Err(config_err(format!("{} needs parameter {key}", self.experiment)));
        }
        self.f64_or(key, f64::NAN)
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.params.get(key).map(|s| s.as_str()) {
            None => Ok(default),
            Some("true" | "yes" | "1" | "on") => Ok(true),
            Some("false" | "no" | "0" | "off") => Ok(false),
            Some(v) => Err(config_err(format!("{key} must be true or false, got {v:?}"))),
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.params.get(key).map_or(default, |s| s.as_str())
    }

    /// Comma-separated list.
    pub fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        let Some(v) = self.params.get(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| config_err(format!("bad entry {s:?} in {key}"))))
            .collect::<Result<Vec<T>>>()
            .map(Some)
    }

    pub fn only_trial(&self) -> Result<Option<usize>> {
        self.parsed("only_trial", "a trial index")
    }

    /// `key = value` lines in a fixed order, for manifests.
    pub fn echo(&self) -> String {
        let mut out = format!("experiment = {}\nseed = {}\n", self.experiment, self.master_seed);
        for (k, v) in &self.params {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }
}

fn normalize_key(key: &str) -> String {
    let key = key.trim().trim_start_matches("--").replace('-', "_");
    match key.as_str() {
        "master_seed" => "seed".to_string(),
        "output" | "output_path" => "out".to_string(),
        "eps_list" => "eps".to_string(),
        "t_list" => "t".to_string(),
        _ => key,
    }
}
