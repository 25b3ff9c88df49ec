//! The eight experiments. Each validates its parameters, runs its trials in
//! parallel and returns a [`Report`].

pub mod diameter;
pub mod km;
pub mod section_size;
pub mod shadow_walk;
pub mod singularity;
pub mod submatrix_min;
pub mod sv_bounds;
pub mod sv_tail;

use shadowbench_core::ensembles::{MatrixEnsembleSpec, MatrixKind};
use rand::Rng;
use shadowbench_core::numerics::{gaussian_matrix, RngStream};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{config_err, Result};
use crate::report::Report;

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    match cfg.experiment {
        ExperimentKind::SectionSize => section_size::run(cfg),
        ExperimentKind::ShadowWalk => shadow_walk::run(cfg),
        ExperimentKind::KmCube => km::run(cfg),
        ExperimentKind::SvTail => sv_tail::run(cfg),
        ExperimentKind::SvBounds => sv_bounds::run(cfg),
        ExperimentKind::Singularity => singularity::run(cfg),
        ExperimentKind::SubmatrixMin => submatrix_min::run(cfg),
        ExperimentKind::Diameter => diameter::run(cfg),
    }
}

/// Stream for trials of `group` within the configured experiment.
pub(crate) fn stream(cfg: &ExperimentConfig, group: &str) -> RngStream {
    RngStream::new(cfg.master_seed, format!("{}/{group}", cfg.experiment))
}

pub(crate) fn ensemble(cfg: &ExperimentConfig) -> Result<MatrixKind> {
    let name = cfg.str_or("ensemble", "gaussian");
    MatrixKind::parse(name).ok_or_else(|| config_err(format!("unknown ensemble {name:?}")))
}

pub(crate) fn matrix_spec(kind: MatrixKind, m: usize, n: usize) -> MatrixEnsembleSpec {
    MatrixEnsembleSpec::new(kind, m, n)
}

pub(crate) fn in_range<T: PartialOrd + std::fmt::Display>(key: &str, v: T, lo: T, hi: T) -> Result<T> {
    if v < lo || v > hi {
        return Err(config_err(format!("{key} = {v} outside [{lo}, {hi}]")));
    }
    Ok(v)
}

pub(crate) fn positive(key: &str, v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(config_err(format!("{key} must be positive, got {v}")));
    }
    Ok(v)
}

pub(crate) fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<Vec<f64>> {
    Ok(gaussian_matrix(rng, 1, d, None, 1.0)?.row(0).to_vec())
}
