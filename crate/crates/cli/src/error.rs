use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] shadowbench_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl RunError {
    /// 0 success, 1 config (and i/o), 2 assertion, 3 numerical budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Io(_) | RunError::Csv(_) => 1,
            RunError::Assertion(_) => 2,
            RunError::Budget(_) | RunError::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, RunError>;

pub(crate) fn config_err(msg: impl Into<String>) -> RunError {
    RunError::Config(msg.into())
}
