//! Random matrix samplers.
//!
//! Normal variates come from `rand_distr::StandardNormal` (the ziggurat
//! method of rand_distr 0.4). The dependency is pinned so seeded output stays
//! fixed across builds.

use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::Mat;
use crate::{Error, Result};

/// Entries `center(i,j) + sigma * g` with `g` standard normal.
pub fn gaussian_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    center: Option<&Mat>,
    sigma: f64,
) -> Result<Mat> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidInput(format!("sigma must be positive, got {sigma}")));
    }
    if let Some(c) = center {
        if c.rows() != m || c.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: m * n,
                found: c.rows() * c.cols(),
            });
        }
    }
    check_dims(m, n)?;
    let data = (0..m * n)
        .map(|k| {
            let g: f64 = rng.sample(StandardNormal);
            center.map_or(0.0, |c| c.as_slice()[k]) + sigma * g
        })
        .collect();
    Mat::new(m, n, data)
}

/// Independent symmetric ±1 entries.
pub fn rademacher_matrix<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> Result<Mat> {
    check_dims(m, n)?;
    let data = (0..m * n)
        .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect();
    Mat::new(m, n, data)
}

/// Independent entries uniform on `[-1, 1]`.
pub fn uniform_matrix<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> Result<Mat> {
    check_dims(m, n)?;
    let data = (0..m * n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    Mat::new(m, n, data)
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(format!("dimensions must be positive, got {m}x{n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RngStream;

    #[test]
    fn gaussian_rejects_bad_sigma() {
        let mut rng = RngStream::new(1, "t").rng();
        assert!(gaussian_matrix(&mut rng, 2, 2, None, 0.0).is_err());
        assert!(gaussian_matrix(&mut rng, 2, 2, None, -1.0).is_err());
        let c = Mat::zeros(3, 2);
        assert!(gaussian_matrix(&mut rng, 2, 2, Some(&c), 1.0).is_err());
    }

    #[test]
    fn vanishing_sigma_returns_center() {
        let mut rng = RngStream::new(1, "t").rng();
        let c = Mat::from_fn(4, 3, |i, j| (i as f64) - 0.5 * j as f64 + 0.25).unwrap();
        let a = gaussian_matrix(&mut rng, 4, 3, Some(&c), 1e-300).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn deterministic_under_stream() {
        let s = RngStream::new(99, "g").at(5);
        let a = gaussian_matrix(&mut s.rng(), 6, 6, None, 1.0).unwrap();
        let b = gaussian_matrix(&mut s.rng(), 6, 6, None, 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gaussian_mean_within_clt_bound() {
        // 50 trials of 200x200: the grand mean has sd 1/sqrt(2e6); allow 4 sd.
        let trials = 50;
        let s = RngStream::new(2024, "gauss-mean");
        let total: f64 = (0..trials)
            .map(|t| {
                gaussian_matrix(&mut s.at(t).rng(), 200, 200, None, 1.0)
                    .unwrap()
                    .as_slice()
                    .iter()
                    .sum::<f64>()
            })
            .sum();
        let count = (200 * 200 * trials) as f64;
        assert!((total / count).abs() <= 4.0 / count.sqrt());
    }

    #[test]
    fn supports() {
        let mut rng = RngStream::new(3, "sup").rng();
        let r = rademacher_matrix(&mut rng, 100, 100).unwrap();
        assert!(r.as_slice().iter().all(|&x| x == 1.0 || x == -1.0));
        // 1e4 entries: the mean has sd 0.01, so 0.05 is a 5 sd window.
        let mean = r.as_slice().iter().sum::<f64>() / 1e4;
        assert!(mean.abs() <= 0.05, "mean {mean}");
        let u = uniform_matrix(&mut rng, 50, 50).unwrap();
        assert!(u.as_slice().iter().all(|&x| (-1.0..=1.0).contains(&x)));
    }
}
