//! Dense linear algebra, seeded randomness and exact determinants.

mod det;
mod lu;
mod matrix;
mod random;
mod rng;
mod svd;
pub mod vector;

pub use det::{exact_integer_det, MAX_DET_DIM, MAX_DET_ENTRY};
pub use lu::Lu;
pub(crate) use lu::numerical_rank;
pub use matrix::Mat;
pub use random::{gaussian_matrix, rademacher_matrix, uniform_matrix};
pub use rng::{RngStream, StreamRng};
pub use svd::{singular_values, svd_right, SingularValueReport, Svd};
