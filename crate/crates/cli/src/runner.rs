//! Parallel trial execution with order-preserving collection.

use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::{config_err, Result};

/// Evaluate `trial(i)` for `i` in `0..count` (or only the configured
/// `only_trial`) and return the results in index order. The thread count
/// never changes the results: each trial derives its own random stream.
pub fn run_trials<T, F>(cfg: &ExperimentConfig, count: usize, trial: F) -> Result<Vec<(usize, T)>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let indices: Vec<usize> = match cfg.only_trial()? {
        Some(i) if i < count => vec![i],
        Some(i) => return Err(config_err(format!("only_trial = {i} but there are {count} trials"))),
        None => (0..count).collect(),
    };
    run_indices(cfg, indices, trial)
}

pub fn run_indices<T, F>(cfg: &ExperimentConfig, indices: Vec<usize>, trial: F) -> Result<Vec<(usize, T)>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| config_err(format!("cannot start worker threads: {e}")))?;
    Ok(pool.install(|| indices.into_par_iter().map(|i| (i, trial(i))).collect()))
}
