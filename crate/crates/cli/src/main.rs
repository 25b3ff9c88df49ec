use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use shadowbench::{run, write_manifest, ExperimentConfig, ExperimentKind, RunError};

/// Seeded Monte Carlo experiments for simplex walks, polytope sections and
/// random matrices.
///
/// Exit codes: 0 success, 1 config error, 2 failed check, 3 numerical budget.
#[derive(Debug, Parser)]
#[command(name = "shadowbench", version)]
struct Cli {
    /// section-size, shadow-walk, km-cube, sv-tail, sv-bounds, singularity,
    /// submatrix-min or diameter (may also come from --config).
    experiment: Option<String>,
    /// Number of points/rows (comma-separated list where supported).
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    d: Option<usize>,
    /// Perturbation size (comma-separated list for sv-tail).
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated epsilon grid.
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    /// Comma-separated deviation grid.
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<f64>>,
    /// gaussian, rademacher or uniform.
    #[arg(long)]
    ensemble: Option<String>,
    /// Sample a uniformly random plane per trial (section-size).
    #[arg(long)]
    random_plane: bool,
    /// CSV output path; `<out>.manifest` is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat `key = value` file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    threads: Option<usize>,
    /// Any other parameter, e.g. --set budget=1000000 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, RunError> {
    let named: Option<ExperimentKind> = match &cli.experiment {
        Some(name) => Some(name.parse().map_err(RunError::Config)?),
        None => None,
    };
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path, named)?,
        None => ExperimentConfig::new(named.ok_or_else(|| RunError::Config("no experiment given".into()))?),
    };
    if let Some(kind) = named {
        cfg.experiment = kind;
    }
    let mut overrides: Vec<(&str, String)> = Vec::new();
    if let Some(v) = &cli.n {
        overrides.push(("n", v.clone()));
    }
    if let Some(v) = cli.d {
        overrides.push(("d", v.to_string()));
    }
    if let Some(v) = &cli.sigma {
        overrides.push(("sigma", v.clone()));
    }
    if let Some(v) = cli.trials {
        overrides.push(("trials", v.to_string()));
    }
    if let Some(v) = cli.seed {
        overrides.push(("seed", v.to_string()));
    }
    if let Some(v) = &cli.eps {
        overrides.push(("eps", join(v)));
    }
    if let Some(v) = &cli.t {
        overrides.push(("t", join(v)));
    }
    if let Some(v) = &cli.ensemble {
        overrides.push(("ensemble", v.clone()));
    }
    if cli.random_plane {
        overrides.push(("random_plane", "true".into()));
    }
    if let Some(v) = &cli.out {
        overrides.push(("out", v.display().to_string()));
    }
    if let Some(v) = cli.threads {
        overrides.push(("threads", v.to_string()));
    }
    for (k, v) in overrides {
        cfg.set(k, &v)?;
    }
    for kv in &cli.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| RunError::Config(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        cfg.set(k, v)?;
    }
    Ok(cfg)
}

fn main_inner(cli: &Cli) -> Result<(), RunError> {
    let cfg = build_config(cli)?;
    let started = Instant::now();
    let report = run(&cfg)?;
    let elapsed = started.elapsed();
    match &cfg.output_path {
        Some(path) => {
            report.write_csv(std::fs::File::create(path)?)?;
            let mut manifest = path.clone().into_os_string();
            manifest.push(".manifest");
            write_manifest(&PathBuf::from(manifest), &cfg, &report, elapsed)?;
            print!("{}", report.summary());
        }
        None => {
            report.write_csv(std::io::stdout().lock())?;
            eprint!("{}", report.summary());
        }
    }
    let failed = report.failed_checks();
    if !failed.is_empty() {
        let names: Vec<&str> = failed.iter().map(|c| c.name.as_str()).collect();
        return Err(RunError::Assertion(names.join("; ")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("shadowbench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
