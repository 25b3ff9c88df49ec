//! Shadow-vertex walk lengths on programs with randomly oriented constraints.
//!
//! This is a proxy for the sign-flip model: each attempt samples Gaussian
//! rows, flips every inequality with a fair coin, and (when the program is
//! feasible and the start objective is bounded) counts the pivots of the
//! shadow path between the optima of two random objectives.

use rand::Rng;
use shadowbench_core::ensembles::haimovich_flip;
use shadowbench_core::numerics::gaussian_matrix;
use shadowbench_core::shadow::shadow_path;
use shadowbench_core::simplex::{find_initial_vertex, solve_with_rule, Dantzig, LinearProgram, Termination};
use shadowbench_core::Error;

use super::{gaussian_vec, in_range, stream};
use crate::config::ExperimentConfig;
use crate::error::{config_err, Result};
use crate::report::{Check, Report};
use crate::runner::run_indices;
use crate::stats::TrialStats;

const KEYS: &[&str] = &["n", "d", "trials", "max_attempts", "slack_se"];

pub const HEADER: &[&str] = &["trial", "seed_index", "n", "d", "flips", "status", "pivots"];

pub const CAVEAT: &str = "proxy measurement: pivots of the shadow path between the optima of two \
random objectives on feasible sign-flipped Gaussian programs; not the exact counting convention \
behind the d/2 bound";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Infeasible,
    /// The start objective has no optimum, so there is no start vertex.
    StartUnbounded,
    /// Walk finished at the optimum.
    Optimal(usize),
    /// Walk ended on an improving ray.
    Unbounded(usize),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Infeasible => "infeasible",
            Status::StartUnbounded => "start-unbounded",
            Status::Optimal(_) => "optimal",
            Status::Unbounded(_) => "unbounded",
        }
    }

    pub fn pivots(&self) -> Option<usize> {
        match *self {
            Status::Optimal(p) | Status::Unbounded(p) => Some(p),
            _ => None,
        }
    }
}

/// Measure one (already flipped) program from a random start objective `z0`.
pub fn measure<R: Rng + ?Sized>(lp: &LinearProgram, z0: &[f64], rng: &mut R) -> Result<Status> {
    let budget = 1000 * lp.num_rows();
    let start = match find_initial_vertex(lp, rng) {
        Ok(v) => v,
        Err(Error::Infeasible { .. }) => return Ok(Status::Infeasible),
        Err(e) => return Err(e.into()),
    };
    let lp0 = lp.with_objective(z0.to_vec())?;
    let out = solve_with_rule(&lp0, &start, Dantzig, budget)?;
    let Some(x0) = out.optimum else {
        return Ok(Status::StartUnbounded);
    };
    let path = shadow_path(lp, z0, &x0, budget)?;
    Ok(match path.walk.terminated {
        Termination::Optimal => Status::Optimal(path.walk.pivot_count),
        Termination::Unbounded => Status::Unbounded(path.walk.pivot_count),
        Termination::BudgetExhausted => {
            return Err(crate::error::RunError::Budget(format!("shadow path exceeded {budget} pivots")))
        }
    })
}

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.check_keys(KEYS)?;
    let d = in_range("d", cfg.usize_or("d", 2)?, 2, 4)?;
    let n = cfg.usize_or("n", 10)?;
    if n <= d {
        return Err(config_err(format!("n = {n} must exceed d = {d}")));
    }
    in_range("n", n, d + 1, 30)?;
    let trials = cfg.usize_or("trials", 500)?;
    if trials == 0 {
        return Err(config_err("trials must be positive"));
    }
    let max_attempts = cfg.usize_or("max_attempts", 50 * trials)?;
    let slack = cfg.f64_or("slack_se", 3.0)?;
    let attempts = stream(cfg, &format!("attempt/n={n}/d={d}"));

    let one = |i: usize| -> Result<(usize, Status)> {
        let mut rng = attempts.at(i as u64).rng();
        let a = gaussian_matrix(&mut rng, n, d, None, 1.0)?;
        let z = gaussian_vec(&mut rng, d)?;
        let z0 = gaussian_vec(&mut rng, d)?;
        let lp = haimovich_flip(&LinearProgram::canonical(a, z)?, &mut rng)?;
        let flips = lp.b().iter().filter(|&&b| b < 0.0).count();
        Ok((flips, measure(&lp, &z0, &mut rng)?))
    };

    let mut report = Report::new(cfg.experiment, HEADER);
    let mut pivots = Vec::new();
    let mut stats = TrialStats::from_values(&[]);
    if let Some(i) = cfg.only_trial()? {
        let (flips, status) = one(i)?;
        push(&mut report, i, n, d, flips, &status);
        pivots.extend(status.pivots().map(|p| p as f64));
    } else {
        let mut next = 0;
        'outer: while pivots.len() < trials && next < max_attempts {
            let batch: Vec<usize> = (next..(next + trials).min(max_attempts)).collect();
            next += batch.len();
            for (i, res) in run_indices(cfg, batch, one)? {
                let (flips, status) = res?;
                push(&mut report, i, n, d, flips, &status);
                match status.pivots() {
                    Some(p) => pivots.push(p as f64),
                    None => stats.flag(status.label()),
                }
                if matches!(status, Status::Unbounded(_)) {
                    stats.flag("ends-on-ray");
                }
                if pivots.len() == trials {
                    break 'outer;
                }
            }
        }
        if pivots.len() < trials {
            return Err(crate::error::RunError::Budget(format!(
                "only {} of {trials} attempts were usable within max_attempts = {max_attempts}",
                pivots.len()
            )));
        }
    }
    let flags = stats.flags;
    let mut st = TrialStats::from_values(&pivots);
    st.flags = flags;
    let bound = d as f64 / 2.0 + slack * st.std_error;
    report.checks.push(Check::new(
        "mean shadow-path pivots <= d/2 + k se",
        st.mean,
        format!("{bound} (k = {slack})"),
        st.mean <= bound,
    ));
    report.metrics.push(("attempts".into(), report.rows.len() as f64));
    report.stats.push(("pivots".into(), st));
    report.notes.push(CAVEAT.into());
    Ok(report)
}

fn push(report: &mut Report, i: usize, n: usize, d: usize, flips: usize, status: &Status) {
    report.push_row(vec![
        report.rows.len().into(),
        i.into(),
        n.into(),
        d.into(),
        flips.into(),
        status.label().into(),
        status.pivots().into(),
    ]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;
    use shadowbench_core::numerics::RngStream;

    struct Heads;

    impl RngCore for Heads {
        fn next_u32(&mut self) -> u32 {
            0
        }
        fn next_u64(&mut self) -> u64 {
            0
        }
        fn fill_bytes(&mut self, dest: &mut [u8]) {
            dest.fill(0);
        }
        fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
            dest.fill(0);
            Ok(())
        }
    }

    #[test]
    fn all_heads_matches_unflipped() {
        let s = RngStream::new(3, "heads");
        for t in 0..20 {
            let mut rng = s.at(t).rng();
            let a = gaussian_matrix(&mut rng, 8, 3, None, 1.0).unwrap();
            let lp = LinearProgram::canonical(a, vec![0.2, -1.0, 0.5]).unwrap();
            let flipped = haimovich_flip(&lp, &mut Heads).unwrap();
            let z0 = [1.0, 0.3, -0.2];
            let x = measure(&lp, &z0, &mut s.at(100 + t).rng()).unwrap();
            let y = measure(&flipped, &z0, &mut s.at(100 + t).rng()).unwrap();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn n_equal_d_is_a_config_error() {
        let cfg = ExperimentConfig::new(crate::config::ExperimentKind::ShadowWalk)
            .with("n", 2)
            .with("d", 2);
        assert!(matches!(run(&cfg), Err(crate::error::RunError::Config(_))));
    }
}
