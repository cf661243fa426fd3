//! Finite-resolution functions on the q-adic plane and their exact Fourier
//! analysis.
//!
//! A grid fixes, per axis, a support extent q^E and a cell diameter q^(-C);
//! the transform is an iterated radix-q pass with the Haar cell measure in
//! the kernel, so axis exponents swap and inversion is exact up to the
//! rounding of complex roots of unity. Functions near the parabola are kept
//! as sparse frequency tables and can be streamed to space rows without
//! materializing more than one full-resolution table.

mod error;
mod fft;
mod function;
mod ops;
mod snapshot;
mod sparse;
mod spec;

pub use error::GridError;
pub use fft::FftPlan;
pub use function::GridFunction;
pub use snapshot::{read_snapshot, write_snapshot};
pub use sparse::{SparseCell, SparseSpectrum};
pub use spec::{memory_budget, set_memory_budget, Axis, GridSpec, Side};
