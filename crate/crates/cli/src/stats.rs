//! Per-experiment aggregates.

use std::collections::BTreeMap;

/// Summary of one measured quantity over a set of trials.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialStats {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator) over `sqrt(count)`.
    pub std_error: f64,
    pub min: f64,
    pub max: f64,
    /// 5%, 50% and 95% quantiles (linear interpolation between order statistics).
    pub quantiles: [f64; 3],
    pub violation_count: usize,
    /// Degeneracies, empty sections, budget exhaustions, … by name.
    pub flags: BTreeMap<String, usize>,
}

impl TrialStats {
    pub fn from_values(values: &[f64]) -> Self {
        let count = values.len();
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let (mean, std_error) = mean_and_se(values);
        Self {
            count,
            mean,
            std_error,
            min: sorted.first().copied().unwrap_or(f64::NAN),
            max: sorted.last().copied().unwrap_or(f64::NAN),
            quantiles: [quantile(&sorted, 0.05), quantile(&sorted, 0.5), quantile(&sorted, 0.95)],
            violation_count: 0,
            flags: BTreeMap::new(),
        }
    }

    pub fn with_violations(mut self, violations: usize) -> Self {
        self.violation_count = violations;
        self
    }

    pub fn flag(&mut self, name: &str) {
        *self.flags.entry(name.to_string()).or_insert(0) += 1;
    }

    pub fn median(&self) -> f64 {
        self.quantiles[1]
    }

    /// Frequency of the indicator values (0/1) with its binomial standard error.
    pub fn frequency(hits: usize, total: usize) -> (f64, f64) {
        if total == 0 {
            return (f64::NAN, f64::NAN);
        }
        let p = hits as f64 / total as f64;
        (p, (p * (1.0 - p) / total as f64).sqrt())
    }

    pub fn describe(&self) -> String {
        let mut s = format!(
            "count={} mean={:.6} se={:.6} min={:.6} q05={:.6} median={:.6} q95={:.6} max={:.6}",
            self.count,
            self.mean,
            self.std_error,
            self.min,
            self.quantiles[0],
            self.quantiles[1],
            self.quantiles[2],
            self.max
        );
        if self.violation_count > 0 {
            s.push_str(&format!(" violations={}", self.violation_count));
        }
        for (k, v) in &self.flags {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Quantile of sorted data, interpolating at position `q (n - 1)`.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0],
        n => {
            let pos = q * (n - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            let frac = pos - lo as f64;
            sorted[lo] + frac * (sorted[hi] - sorted[lo])
        }
    }
}
