use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("rank deficient: rank {rank} < {required}")]
    RankDeficient { rank: usize, required: usize },
    #[error("combinatorial budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unsupported form: {0}")]
    Unsupported(String),
    #[error("degenerate span: vectors are collinear")]
    DegenerateSpan,
    /// Farkas multipliers `y >= 0` with `yᵀA = 0` and `yᵀb < 0`.
    #[error("linear program is infeasible")]
    Infeasible { certificate: Vec<f64> },
    /// A direction `r` with `Ar <= 0` along which the objective increases.
    #[error("linear program is unbounded")]
    Unbounded { ray: Vec<f64> },
    #[error("feasible region is not pointed")]
    NotPointed,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("basis repeated during walk (cycling)")]
    Cycling,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
