use rand::RngCore;
use shadowbench_core::ensembles::{
    haimovich_flip, klee_minty, read_centers, sample_bounded_perturbation, sample_smoothed_polytope,
    subgaussian_moment_probe, BoundedLaw, KleeMintySpec, MatrixEnsembleSpec, MatrixKind, SmoothedPolytopeSpec,
};
use shadowbench_core::numerics::{Mat, RngStream};
use shadowbench_core::polytope::{vertex_edge_graph, HPolytope};
use shadowbench_core::simplex::LinearProgram;

/// A generator returning one fixed word forever.
struct Constant(u32);

impl RngCore for Constant {
    fn next_u32(&mut self) -> u32 {
        self.0
    }
    fn next_u64(&mut self) -> u64 {
        (u64::from(self.0) << 32) | u64::from(self.0)
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        dest.iter_mut().for_each(|b| *b = self.0 as u8);
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

fn sample_lp(n: usize, d: usize) -> LinearProgram {
    let mut rng = RngStream::new(41, "flip-lp").rng();
    let a = shadowbench_core::numerics::gaussian_matrix(&mut rng, n, d, None, 1.0).unwrap();
    LinearProgram::canonical(a, vec![1.0; d]).unwrap()
}

#[test]
fn zero_centered_norm_tail() {
    // |g| for g ~ N(0, I_3) exceeds sqrt(3) + 6 with probability below
    // exp(-36/2) by Gaussian concentration of the norm (1-Lipschitz, median
    // below sqrt(3)), so 20 points fail together far less than 1% of the time.
    let spec = SmoothedPolytopeSpec::new(0.1, vec![vec![0.0; 3]; 20]).unwrap();
    let bound = 0.1 * (3f64.sqrt() + 6.0);
    let mut failures = 0;
    for t in 0..1000 {
        let s = sample_smoothed_polytope(&spec, &mut RngStream::new(42, "tail").at(t).rng()).unwrap();
        if s.polytope.points().iter().any(|p| p.iter().map(|v| v * v).sum::<f64>().sqrt() > bound) {
            failures += 1;
        }
    }
    assert!(failures < 10);
}

#[test]
fn smoothed_sampling_is_deterministic_and_flags_sigma() {
    let mut rng = RngStream::new(43, "centers").rng();
    let spec = SmoothedPolytopeSpec::on_sphere(16, 3, 0.04, &mut rng).unwrap();
    let stream = RngStream::new(43, "points").at(7);
    let a = sample_smoothed_polytope(&spec, &mut stream.rng()).unwrap();
    let b = sample_smoothed_polytope(&spec, &mut stream.rng()).unwrap();
    assert_eq!(a, b);
    assert!(a.sigma_valid);
    let cap = spec.sigma_cap();
    let at_cap = SmoothedPolytopeSpec::new(cap, spec.centers.clone()).unwrap();
    assert!(sample_smoothed_polytope(&at_cap, &mut stream.rng()).unwrap().sigma_valid);
    let over = SmoothedPolytopeSpec::new(cap * 1.01, spec.centers.clone()).unwrap();
    assert!(!sample_smoothed_polytope(&over, &mut stream.rng()).unwrap().sigma_valid);
}

#[test]
fn bounded_perturbation_supports() {
    let centers = vec![vec![0.5, -0.5, 0.0], vec![0.0, 0.0, 1.0], vec![0.6, 0.0, 0.8]];
    let spec = SmoothedPolytopeSpec::new(0.25, centers.clone()).unwrap();
    let stream = RngStream::new(44, "bounded");
    let sign = sample_bounded_perturbation(&spec, BoundedLaw::SignCube, &mut stream.rng()).unwrap();
    let solid = sample_bounded_perturbation(&spec, BoundedLaw::SolidCube, &mut stream.rng()).unwrap();
    for (p, c) in sign.polytope.points().iter().zip(&centers) {
        for (x, y) in p.iter().zip(c) {
            assert!(((x - y).abs() - 0.25).abs() < 1e-15);
        }
    }
    for (p, c) in solid.polytope.points().iter().zip(&centers) {
        for (x, y) in p.iter().zip(c) {
            assert!((x - y).abs() <= 0.25 + 1e-15);
        }
    }
    assert_ne!(sign, solid);
    assert_eq!(
        sign,
        sample_bounded_perturbation(&spec, BoundedLaw::SignCube, &mut stream.rng()).unwrap()
    );
    assert_eq!(
        solid,
        sample_bounded_perturbation(&spec, BoundedLaw::SolidCube, &mut stream.rng()).unwrap()
    );
}

#[test]
fn flips_with_constant_streams() {
    let lp = sample_lp(10, 3);
    let heads = haimovich_flip(&lp, &mut Constant(0)).unwrap();
    assert_eq!(heads, lp);
    let tails = haimovich_flip(&lp, &mut Constant(u32::MAX)).unwrap();
    for i in 0..10 {
        assert_eq!(tails.b()[i], -1.0);
        for (x, y) in tails.row(i).iter().zip(lp.row(i)) {
            assert_eq!(*x, -y);
        }
    }
    let not_canonical = LinearProgram::new(Mat::identity(2), vec![1.0, 2.0], vec![1.0, 0.0]).unwrap();
    assert!(haimovich_flip(&not_canonical, &mut Constant(0)).is_err());
}

#[test]
fn flip_counts_are_binomial() {
    let lp = sample_lp(10, 3);
    let stream = RngStream::new(45, "flips");
    let mut hist = [0usize; 11];
    let trials = 1000;
    for t in 0..trials {
        let f = haimovich_flip(&lp, &mut stream.at(t).rng()).unwrap();
        hist[f.b().iter().filter(|&&b| b < 0.0).count()] += 1;
    }
    // Pool the sparse tails: {0,1,2}, 3, …, 7, {8,9,10}.
    let binom = |k: usize| (0..k).fold(1.0, |acc, i| acc * (10 - i) as f64 / (i + 1) as f64) / 1024.0;
    let bins: Vec<(f64, f64)> = std::iter::once((0..=2).collect::<Vec<_>>())
        .chain((3..=7).map(|k| vec![k]))
        .chain(std::iter::once((8..=10).collect()))
        .map(|ks| {
            let obs: usize = ks.iter().map(|&k| hist[k]).sum();
            let p: f64 = ks.iter().map(|&k| binom(k)).sum();
            (obs as f64, p * trials as f64)
        })
        .collect();
    let chi2: f64 = bins.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    // 6 degrees of freedom, 0.1% upper quantile.
    assert!(chi2 < 22.46, "chi2 = {chi2}");
}

#[test]
fn klee_minty_vertex_count_by_graph() {
    for d in 2..=8 {
        let km = klee_minty(&KleeMintySpec::new(d, 1.0 / 3.0).unwrap()).unwrap();
        let rows: Vec<Vec<f64>> = (0..2 * d).map(|i| km.lp.row(i).to_vec()).collect();
        let g = vertex_edge_graph(&HPolytope::new(rows, km.lp.b().to_vec()).unwrap()).unwrap();
        assert_eq!(g.vertices.len(), 1 << d);
        // Still a combinatorial cube.
        assert_eq!(g.edge_count(), d << (d - 1));
    }
}

#[test]
fn klee_minty_default_and_bounds() {
    let km = klee_minty(&KleeMintySpec::new(12, 1.0 / 3.0).unwrap()).unwrap();
    assert_eq!(km.lp.num_rows(), 24);
    assert!(KleeMintySpec::new(13, 0.25).is_err());
    assert!(KleeMintySpec::new(4, 0.75).is_err());
}

#[test]
fn rademacher_moments_are_one() {
    let spec = MatrixEnsembleSpec::new(MatrixKind::Rademacher, 1, 1);
    for p in [1, 2, 3, 7, 20] {
        let m = subgaussian_moment_probe(&spec, p, 1000, &mut RngStream::new(46, "rad").rng()).unwrap();
        assert_eq!(m, 1.0);
    }
}

#[test]
fn gaussian_second_and_fourth_moments() {
    let spec = MatrixEnsembleSpec::new(MatrixKind::Gaussian, 1, 1);
    let n = 100_000;
    let m2 = subgaussian_moment_probe(&spec, 2, n, &mut RngStream::new(47, "g2").rng()).unwrap();
    // Var(g^2) = 2.
    assert!((m2 * m2 - 1.0).abs() <= 3.0 * (2.0 / n as f64).sqrt());
    let m4 = subgaussian_moment_probe(&spec, 4, n, &mut RngStream::new(47, "g4").rng()).unwrap();
    // E g^4 = 3 and Var(g^4) = E g^8 - 9 = 105 - 9.
    assert!((m4.powi(4) - 3.0).abs() <= 3.0 * (96.0 / n as f64).sqrt());
    assert!((m4 - 3f64.powf(0.25)).abs() < 0.01);
}

#[test]
fn moment_growth_is_subgaussian() {
    for kind in [MatrixKind::Gaussian, MatrixKind::Rademacher] {
        let spec = MatrixEnsembleSpec::new(kind, 1, 1);
        let ratios: Vec<f64> = [1u32, 2, 4, 8, 16]
            .iter()
            .map(|&p| {
                let m = subgaussian_moment_probe(&spec, p, 200_000, &mut RngStream::new(48, kind.name()).at(p as u64).rng())
                    .unwrap();
                m / (p as f64).sqrt()
            })
            .collect();
        for w in ratios.windows(2) {
            assert!(w[1] <= w[0] * 1.05, "{kind:?}: {ratios:?}");
        }
        assert!(ratios.iter().all(|&r| r <= 2.0));
    }
}

#[test]
fn entry_variances() {
    let n = 200_000;
    for (kind, unit, var) in [
        (MatrixKind::Uniform, true, 1.0),
        (MatrixKind::Uniform, false, 1.0 / 3.0),
        (MatrixKind::Rademacher, true, 1.0),
        (MatrixKind::Gaussian, true, 1.0),
    ] {
        let mut spec = MatrixEnsembleSpec::new(kind, 1, 1);
        spec.unit_variance = unit;
        assert_eq!(spec.entry_variance(), var);
        let m2 = subgaussian_moment_probe(&spec, 2, n, &mut RngStream::new(49, "var").rng()).unwrap();
        assert!((m2 * m2 - var).abs() < 0.02, "{kind:?} {unit}: {}", m2 * m2);
    }
}

#[test]
fn documented_subgaussian_constants_satisfy_their_tails() {
    // P(|ξ| > t) <= 2 exp(-t²/B²) checked on a grid against exact tails.
    let tails: [(MatrixKind, bool, Box<dyn Fn(f64) -> f64>); 3] = [
        (MatrixKind::Rademacher, true, Box::new(|t: f64| if t < 1.0 { 1.0 } else { 0.0 })),
        (MatrixKind::Uniform, false, Box::new(|t: f64| (1.0 - t).max(0.0))),
        (MatrixKind::Uniform, true, Box::new(|t: f64| (1.0 - t / 3f64.sqrt()).max(0.0))),
    ];
    for (kind, unit, tail) in tails {
        let mut spec = MatrixEnsembleSpec::new(kind, 1, 1);
        spec.unit_variance = unit;
        let b = spec.subgaussian_moment();
        let mut tight = 0.0f64;
        for i in 1..20_000 {
            let t = i as f64 * 1e-4;
            let bound = 2.0 * (-t * t / (b * b)).exp();
            assert!(tail(t) <= bound + 1e-9, "{kind:?} t={t}");
            tight = tight.max(tail(t) / bound);
        }
        // And the constant is (nearly) the smallest one.
        assert!(tight > 0.999, "{kind:?}: {tight}");
    }
}

#[test]
fn center_files_load() {
    let path = std::env::temp_dir().join(format!("centers-{}.txt", std::process::id()));
    std::fs::write(&path, "0.6 0.8 0\n\n# comment\n0 0 -1\n").unwrap();
    let centers = read_centers(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(centers.len(), 2);
    let spec = SmoothedPolytopeSpec::new(0.05, centers).unwrap();
    assert_eq!((spec.n, spec.d), (2, 3));
}

#[test]
fn matrix_samples_have_requested_shape_and_center() {
    let center = Mat::from_fn(3, 4, |_, _| 1.0).unwrap();
    for kind in [MatrixKind::Gaussian, MatrixKind::Rademacher, MatrixKind::Uniform] {
        let spec = MatrixEnsembleSpec::new(kind, 3, 4).with_center(center.clone()).with_sigma(1e-300);
        let m = spec.sample(&mut RngStream::new(50, "shape").rng()).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 4));
        if kind == MatrixKind::Gaussian {
            assert!(m.as_slice().iter().all(|&v| v == 1.0));
        }
    }
}
