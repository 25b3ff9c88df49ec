//! Instance generators: smoothed and bounded-perturbation polytopes, random
//! sign flips of constraints, Klee–Minty cubes and scalar/matrix entry laws.

use std::io::BufRead;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::numerics::vector::{self, norm};
use crate::numerics::{gaussian_matrix, rademacher_matrix, uniform_matrix, Mat};
use crate::polytope::VPolytope;
use crate::simplex::{LinearProgram, VertexBasis};
use crate::{Error, Result};

/// `n` points `ā_i + σ g_i` with `|ā_i| <= 1` and standard normal `g_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothedPolytopeSpec {
    pub n: usize,
    pub d: usize,
    pub sigma: f64,
    pub centers: Vec<Vec<f64>>,
}

impl SmoothedPolytopeSpec {
    pub fn new(sigma: f64, centers: Vec<Vec<f64>>) -> Result<Self> {
        let n = centers.len();
        if n == 0 {
            return Err(Error::InvalidInput("at least one center is required".into()));
        }
        let d = centers[0].len();
        if d == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidInput(format!("sigma must be positive, got {sigma}")));
        }
        for (i, c) in centers.iter().enumerate() {
            if c.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: c.len(),
                });
            }
            vector::check_finite(c)?;
            if norm(c) > 1.0 + 1e-12 {
                return Err(Error::InvalidInput(format!("center {i} has norm {} > 1", norm(c))));
            }
        }
        Ok(Self { n, d, sigma, centers })
    }

    /// Centers drawn once, uniformly from the unit sphere.
    pub fn on_sphere<R: Rng + ?Sized>(n: usize, d: usize, sigma: f64, rng: &mut R) -> Result<Self> {
        Self::new(sigma, sphere_points(n, d, rng))
    }

    /// `1 / (6 sqrt(d ln n))`.
    pub fn sigma_cap(&self) -> f64 {
        sigma_cap(self.n, self.d)
    }

    pub fn sigma_valid(&self) -> bool {
        self.sigma <= self.sigma_cap()
    }
}

/// Largest per-coordinate deviation covered by the smoothed section bound.
pub fn sigma_cap(n: usize, d: usize) -> f64 {
    let log_n = (n as f64).ln();
    if log_n <= 0.0 {
        return f64::INFINITY;
    }
    1.0 / (6.0 * (d as f64 * log_n).sqrt())
}

pub fn sphere_points<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| loop {
            let g: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
            let r = norm(&g);
            if r > 1e-12 {
                break vector::scale(&g, 1.0 / r);
            }
        })
        .collect()
}

/// A sampled polytope together with whether its sigma respects the cap.
#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeSample {
    pub polytope: VPolytope,
    pub sigma_valid: bool,
}

pub fn sample_smoothed_polytope<R: Rng + ?Sized>(spec: &SmoothedPolytopeSpec, rng: &mut R) -> Result<PolytopeSample> {
    let noise = gaussian_matrix(rng, spec.n, spec.d, None, spec.sigma)?;
    let points = spec
        .centers
        .iter()
        .zip(noise.row_iter())
        .map(|(c, g)| vector::add(c, g))
        .collect();
    Ok(PolytopeSample {
        polytope: VPolytope::new(points, false)?,
        sigma_valid: spec.sigma_valid(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundedLaw {
    /// θ uniform on `{-1, 1}^d`.
    SignCube,
    /// θ uniform on `[-1, 1]^d`.
    SolidCube,
}

/// Points `ā_i + σ θ_i` with θ drawn from `law`.
pub fn sample_bounded_perturbation<R: Rng + ?Sized>(
    spec: &SmoothedPolytopeSpec,
    law: BoundedLaw,
    rng: &mut R,
) -> Result<PolytopeSample> {
    let theta = match law {
        BoundedLaw::SignCube => rademacher_matrix(rng, spec.n, spec.d)?,
        BoundedLaw::SolidCube => uniform_matrix(rng, spec.n, spec.d)?,
    };
    let points = spec
        .centers
        .iter()
        .zip(theta.row_iter())
        .map(|(c, t)| c.iter().zip(t).map(|(a, b)| a + spec.sigma * b).collect())
        .collect();
    Ok(PolytopeSample {
        polytope: VPolytope::new(points, false)?,
        sigma_valid: spec.sigma_valid(),
    })
}

/// Read centers: one point per line, whitespace-separated decimals. Blank
/// lines and lines starting with `#` are skipped.
pub fn read_centers<R: BufRead>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::InvalidInput(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let point = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("line {}: bad number {tok:?}", lineno + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        out.push(point);
    }
    Ok(out)
}

/// Keep each row of a `b = 1` program or reverse it to `<a_i,x> >= 1`,
/// stored as `<-a_i,x> <= -1`, with one fair coin per row.
pub fn haimovich_flip<R: Rng + ?Sized>(lp: &LinearProgram, rng: &mut R) -> Result<LinearProgram> {
    if !lp.is_canonical() {
        return Err(Error::Unsupported("sign flips need the b = 1 form".into()));
    }
    let n = lp.num_rows();
    let mut rows = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        if rng.gen::<bool>() {
            rows.push(vector::scale(lp.row(i), -1.0));
            b.push(-1.0);
        } else {
            rows.push(lp.row(i).to_vec());
            b.push(1.0);
        }
    }
    LinearProgram::from_rows(&rows, b, lp.z().to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KleeMintySpec {
    pub d: usize,
    pub epsilon: f64,
}

impl KleeMintySpec {
    pub fn new(d: usize, epsilon: f64) -> Result<Self> {
        if !(2..=12).contains(&d) {
            return Err(Error::InvalidInput(format!("Klee-Minty dimension must be in 2..=12, got {d}")));
        }
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::InvalidInput(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
        }
        Ok(Self { d, epsilon })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KleeMinty {
    pub lp: LinearProgram,
    /// The vertex `x = 0`.
    pub start: VertexBasis,
}

/// The deformed cube
///
/// ```text
/// max x_d  s.t.  0 <= x_1 <= 1,  ε x_{j-1} <= x_j <= 1 - ε x_{j-1}  (j = 2..d)
/// ```
///
/// with rows ordered `lower_1, upper_1, lower_2, …`. Rows of coordinate `j`
/// are scaled by `(2/ε)^{j-1}`. The scaling leaves the polytope unchanged,
/// but makes the multiplier of coordinate `j`'s tight row have magnitude
/// `ε^{d-1} 2^{1-j}` at every vertex, so the largest-coefficient rule always
/// releases the lowest improving coordinate and walks all `2^d` vertices
/// from the origin.
pub fn klee_minty(spec: &KleeMintySpec) -> Result<KleeMinty> {
    let KleeMintySpec { d, epsilon: eps } = *spec;
    let mut rows = Vec::with_capacity(2 * d);
    let mut b = Vec::with_capacity(2 * d);
    for j in 0..d {
        let s = (2.0 / eps).powi(j as i32);
        let mut lower = vec![0.0; d];
        let mut upper = vec![0.0; d];
        lower[j] = -s;
        upper[j] = s;
        if j > 0 {
            lower[j - 1] = eps * s;
            upper[j - 1] = eps * s;
        }
        rows.push(lower);
        b.push(0.0);
        rows.push(upper);
        b.push(s);
    }
    let lp = LinearProgram::from_rows(&rows, b, vector::unit(d, d - 1))?;
    let start = lp.vertex(&(0..d).map(|j| 2 * j).collect::<Vec<_>>())?;
    Ok(KleeMinty { lp, start })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Gaussian,
    Rademacher,
    Uniform,
}

impl MatrixKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gaussian" => Some(Self::Gaussian),
            "rademacher" => Some(Self::Rademacher),
            "uniform" => Some(Self::Uniform),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::Rademacher => "rademacher",
            Self::Uniform => "uniform",
        }
    }
}

/// A random matrix law.
///
/// Variances: gaussian `σ²`, rademacher 1, uniform on `[-1,1]` 1/3 (1 when
/// `unit_variance` rescales it by √3).
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixEnsembleSpec {
    pub kind: MatrixKind,
    pub m: usize,
    pub n: usize,
    pub center: Option<Mat>,
    pub sigma: f64,
    pub unit_variance: bool,
}

impl MatrixEnsembleSpec {
    pub fn new(kind: MatrixKind, m: usize, n: usize) -> Self {
        Self {
            kind,
            m,
            n,
            center: None,
            sigma: 1.0,
            unit_variance: true,
        }
    }

    pub fn with_center(mut self, center: Mat) -> Self {
        self.center = Some(center);
        self
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn entry_variance(&self) -> f64 {
        match self.kind {
            MatrixKind::Gaussian => self.sigma * self.sigma,
            MatrixKind::Rademacher => 1.0,
            MatrixKind::Uniform if self.unit_variance => 1.0,
            MatrixKind::Uniform => 1.0 / 3.0,
        }
    }

    /// Smallest `B` with `P(|ξ| > t) <= 2 exp(-t²/B²)` for all `t > 0`,
    /// for the centred entry law with `σ = 1`.
    ///
    /// * gaussian: `√2` (from `erfc(x) <= exp(-x²)`, sharp as `t → ∞`)
    /// * rademacher: `1/√(ln 2)` (the constraint binds as `t → 1⁻`)
    /// * uniform on `[-1,1]`: ≈ 0.52865, or ≈ 0.91564 when rescaled by √3
    ///   (numerical maximum of `t / √(ln(2/(1-t)))`)
    pub fn subgaussian_moment(&self) -> f64 {
        match self.kind {
            MatrixKind::Gaussian => std::f64::consts::SQRT_2,
            MatrixKind::Rademacher => 1.0 / std::f64::consts::LN_2.sqrt(),
            MatrixKind::Uniform if self.unit_variance => 0.915_643_356,
            MatrixKind::Uniform => 0.528_646_938,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Mat> {
        let centered = match self.kind {
            MatrixKind::Gaussian => return gaussian_matrix(rng, self.m, self.n, self.center.as_ref(), self.sigma),
            MatrixKind::Rademacher => rademacher_matrix(rng, self.m, self.n)?,
            MatrixKind::Uniform => {
                let u = uniform_matrix(rng, self.m, self.n)?;
                if self.unit_variance {
                    u.map(|x| x * 3f64.sqrt())?
                } else {
                    u
                }
            }
        };
        match &self.center {
            None => Ok(centered),
            Some(c) => Mat::from_fn(self.m, self.n, |i, j| c[(i, j)] + centered[(i, j)]),
        }
    }

    /// One centred entry with `σ = 1`.
    pub fn sample_entry<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            MatrixKind::Gaussian => rng.sample(StandardNormal),
            MatrixKind::Rademacher => {
                if rng.gen::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            MatrixKind::Uniform => {
                let u: f64 = rng.gen_range(-1.0..=1.0);
                if self.unit_variance {
                    u * 3f64.sqrt()
                } else {
                    u
                }
            }
        }
    }
}

/// Empirical `(E|ξ|^p)^{1/p}` of the entry law from `trials` samples.
pub fn subgaussian_moment_probe<R: Rng + ?Sized>(
    spec: &MatrixEnsembleSpec,
    p: u32,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    if !(1..=20).contains(&p) {
        return Err(Error::InvalidInput(format!("moment order must be in 1..=20, got {p}")));
    }
    if trials < 1000 {
        return Err(Error::InvalidInput(format!("need at least 1000 trials, got {trials}")));
    }
    let sum: f64 = (0..trials)
        .map(|_| spec.sample_entry(rng).abs().powi(p as i32))
        .sum();
    Ok((sum / trials as f64).powf(1.0 / p as f64))
}
