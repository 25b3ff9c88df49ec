use super::matrix::Mat;
use crate::{Error, Result};

pub const MAX_DET_DIM: usize = 12;
pub const MAX_DET_ENTRY: f64 = (1u64 << 30) as f64;

/// Exact determinant of an integer-valued matrix by Bareiss fraction-free
/// elimination in checked `i128` arithmetic. Every intermediate is a minor of
/// the input, so the divisions are exact.
pub fn exact_integer_det(a: &Mat) -> Result<i128> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    if n > MAX_DET_DIM {
        return Err(Error::InvalidInput(format!(
            "exact determinant limited to n <= {MAX_DET_DIM}, got {n}"
        )));
    }
    let mut m = Vec::with_capacity(n * n);
    for (k, &x) in a.as_slice().iter().enumerate() {
        if x.fract() != 0.0 || x.abs() > MAX_DET_ENTRY {
            return Err(Error::InvalidInput(format!(
                "entry {k} = {x} is not an integer with magnitude <= 2^30"
            )));
        }
        m.push(x as i128);
    }
    bareiss(&mut m, n)
}

pub(crate) fn bareiss(m: &mut [i128], n: usize) -> Result<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if m[k * n + k] == 0 {
            match (k + 1..n).find(|&i| m[i * n + k] != 0) {
                Some(p) => {
                    for j in 0..n {
                        m.swap(k * n + j, p * n + j);
                    }
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = m[i * n + j].checked_mul(pivot).ok_or(Error::Overflow)?;
                let rhs = m[i * n + k]
                    .checked_mul(m[k * n + j])
                    .ok_or(Error::Overflow)?;
                m[i * n + j] = lhs.checked_sub(rhs).ok_or(Error::Overflow)? / prev;
            }
            m[i * n + k] = 0;
        }
        prev = pivot;
    }
    Ok(sign * m[n * n - 1])
}
