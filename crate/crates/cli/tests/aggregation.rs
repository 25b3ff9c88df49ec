//! Recompute reported statistics from the CSV text alone.

use shadowbench::{run, ExperimentConfig, ExperimentKind, Report};

fn parse(report: &Report) -> (Vec<String>, Vec<Vec<String>>) {
    let text = report.csv_string().unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

/// Mean, standard error, min, max and interpolated quantiles, written
/// independently of the library.
fn summarize(mut v: Vec<f64>) -> [f64; 7] {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let ss: f64 = v.iter().map(|x| (x - mean) * (x - mean)).sum();
    let se = (ss / (n - 1.0)).sqrt() / n.sqrt();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| {
        let h = p * (n - 1.0);
        let i = h.floor() as usize;
        let j = (i + 1).min(v.len() - 1);
        v[i] + (h - i as f64) * (v[j] - v[i])
    };
    [mean, se, v[0], v[v.len() - 1], q(0.05), q(0.5), q(0.95)]
}

fn assert_matches(report: &Report, label: &str, values: Vec<f64>) {
    let st = report.stat(label).unwrap_or_else(|| panic!("no stat {label}"));
    assert_eq!(st.count, values.len());
    let want = summarize(values);
    let got = [
        st.mean,
        st.std_error,
        st.min,
        st.max,
        st.quantiles[0],
        st.quantiles[1],
        st.quantiles[2],
    ];
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= 1e-12 * (1.0 + w.abs()), "{label}: {got:?} vs {want:?}");
    }
}

fn column(header: &[String], rows: &[Vec<String>], name: &str, keep: impl Fn(&[String]) -> bool) -> Vec<f64> {
    let c = header.iter().position(|h| h == name).unwrap();
    rows.iter().filter(|r| keep(r)).map(|r| r[c].parse().unwrap()).collect()
}

#[test]
fn section_size_stats_match_csv() {
    let cfg = ExperimentConfig::new(ExperimentKind::SectionSize)
        .with("n", "10,30")
        .with("d", 3)
        .with("sigma", 0.05)
        .with("trials", 25);
    let report = run(&cfg).unwrap();
    let (h, rows) = parse(&report);
    let ncol = h.iter().position(|x| x == "n").unwrap();
    for n in ["10", "30"] {
        let edges = column(&h, &rows, "edges", |r| r[ncol] == n);
        assert_matches(&report, &format!("edges n={n}"), edges.clone());
        let perim = column(&h, &rows, "perimeter", |r| r[ncol] == n);
        assert_matches(&report, &format!("perimeter n={n}"), perim);
        let nonempty: Vec<f64> = edges.into_iter().filter(|&e| e > 0.0).collect();
        assert_matches(&report, &format!("edges|nonempty n={n}"), nonempty);
    }
}

#[test]
fn matrix_stats_match_csv() {
    let cfg = ExperimentConfig::new(ExperimentKind::SvBounds)
        .with("n", "40")
        .with("d", 10)
        .with("trials", 120);
    let report = run(&cfg).unwrap();
    let (h, rows) = parse(&report);
    assert_matches(&report, "lambda_min n=40 d=10", column(&h, &rows, "lambda_min", |_| true));
    assert_matches(&report, "lambda_max n=40 d=10", column(&h, &rows, "lambda_max", |_| true));
    assert_matches(&report, "ratio_min n=40 d=10", column(&h, &rows, "ratio_min", |_| true));

    let cfg = ExperimentConfig::new(ExperimentKind::SvTail).with("n", 10).with("trials", 1500);
    let report = run(&cfg).unwrap();
    let (h, rows) = parse(&report);
    let scaled = column(&h, &rows, "scaled_lambda_min", |_| true);
    assert_matches(&report, "scaled_lambda_min sigma=1", scaled);
    let lmin = column(&h, &rows, "lambda_min", |_| true);
    let freq = lmin.iter().filter(|&&l| l <= 0.1 / 10f64.sqrt()).count() as f64 / lmin.len() as f64;
    assert_eq!(report.metric("freq eps=0.1 sigma=1").unwrap(), freq);
}

#[test]
fn walk_and_diameter_stats_match_csv() {
    let cfg = ExperimentConfig::new(ExperimentKind::ShadowWalk).with("n", 9).with("d", 2).with("trials", 60);
    let report = run(&cfg).unwrap();
    let (h, rows) = parse(&report);
    let status = h.iter().position(|x| x == "status").unwrap();
    let pivots = column(&h, &rows, "pivots", |r| r[status] == "optimal" || r[status] == "unbounded");
    assert_eq!(pivots.len(), 60);
    assert_matches(&report, "pivots", pivots);

    let cfg = ExperimentConfig::new(ExperimentKind::Diameter).with("n", 9).with("d", 3).with("trials", 30);
    let report = run(&cfg).unwrap();
    let (h, rows) = parse(&report);
    let status = h.iter().position(|x| x == "status").unwrap();
    assert_matches(&report, "diameter", column(&h, &rows, "diameter", |r| r[status] == "ok"));
}
