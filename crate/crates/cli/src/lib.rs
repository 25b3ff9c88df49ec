//! Seeded, reproducible Monte Carlo experiments on simplex walks, polytope
//! sections and random matrices.
//!
//! Every experiment reads an [`ExperimentConfig`], evaluates independent
//! trials in parallel (trial `i` draws only from its own derived random
//! stream) and produces a [`Report`]: CSV rows in trial order, aggregate
//! [`TrialStats`], and threshold checks.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;
pub mod runner;
pub mod stats;

pub use config::{ExperimentConfig, ExperimentKind};
pub use error::{Result, RunError};
pub use experiments::run;
pub use report::{write_manifest, Cell, Check, Report};
pub use stats::TrialStats;
