use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("R must be q^(2k) with k >= 1, got exponent {0}")]
    BadScaleExponent(i64),
    #[error("interval level {got} does not match the required level {want}")]
    IntervalLevel { want: u32, got: u32 },
    #[error("ambient exponent {ambient} too small for tube shape (width {width}, height {height})")]
    AmbientTooSmall { ambient: u32, width: u32, height: u32 },
    #[error("function Fourier support escapes the required region: cell ({0}, {1})")]
    SupportViolation(u32, u32),
    #[error("grid: {0}")]
    Grid(#[from] grid_fourier::GridError),
    #[error("qadic: {0}")]
    QAdic(#[from] qadic_core::QAdicError),
}
