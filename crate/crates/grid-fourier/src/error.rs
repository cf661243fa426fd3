use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("axis {0} has extent + cell = {1} < 0")]
    BadAxis(usize, i64),
    #[error("grid of {cells} cells ({bytes} bytes) exceeds the memory budget of {budget} bytes")]
    BudgetExceeded { cells: u128, bytes: u128, budget: u64 },
    #[error("operation requires a {expected}-side function, got {got}")]
    WrongSide { expected: &'static str, got: &'static str },
    #[error("grid specs do not match")]
    SpecMismatch,
    #[error("interval at level {level} is finer than the axis resolution (cell exponent {cell})")]
    IntervalTooFine { level: u32, cell: i32 },
    #[error("cutoff exponent {0} outside the representable range [{1}, {2}]")]
    CutoffOutOfRange(i32, i32, i32),
    #[error("q mismatch between grid ({0}) and interval ({1})")]
    QMismatch(u32, u32),
    #[error("snapshot io: {0}")]
    SnapshotIo(String),
    #[error("snapshot malformed: {0}")]
    SnapshotFormat(&'static str),
}

impl From<std::io::Error> for GridError {
    fn from(e: std::io::Error) -> Self {
        GridError::SnapshotIo(e.to_string())
    }
}
