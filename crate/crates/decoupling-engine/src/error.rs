use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("q = {0} is not an odd prime")]
    BadPrime(u32),
    #[error("R must be an even power of q; got exponent {0}")]
    ScaleNotEvenPower(u32),
    #[error("eps = {0} outside (0, 1]")]
    BadEps(f64),
    #[error("no admissible scale step r for log_q R = {rho} (q = {q}, A = {cap_a})")]
    NoAdmissibleStep { rho: u32, q: u32, cap_a: u32 },
    #[error("R too small for this eps: log_q R = {rho} below one step r = {r}")]
    ScaleTooSmall { rho: u32, r: u32 },
    #[error("working depth {j} outside 1..={n}")]
    BadDepth { j: u32, n: u32 },
    #[error("Fourier support escapes the cap parallelogram at cell ({0}, {1})")]
    SupportViolation(u32, u32),
    #[error("resolution exponent {res} too small for cap level {level}")]
    ResolutionTooCoarse { res: u32, level: u32 },
    #[error("coarse grids at mismatched scales")]
    CoarseMismatch,
    #[error("geometry: {0}")]
    Geom(#[from] parabola_geometry::GeomError),
    #[error("grid: {0}")]
    Grid(#[from] grid_fourier::GridError),
}
