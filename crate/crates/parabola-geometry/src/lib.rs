//! Geometry of the parabola neighborhood in the q-adic frequency plane:
//! cap parallelograms, their dual tubes, exact tilings, intersection
//! measures, and the uncertainty principle they support.

mod error;
mod intersection;
mod parallelogram;
mod tube;
mod uncertainty;
mod xi;

pub use error::GeomError;
pub use intersection::{tube_intersection_measure, TubeIntersection};
pub use parallelogram::{
    verify_parallelogram_equality, FrequencyParallelogram, ParallelogramCheck,
};
pub use tube::TubeFamily;
pub use uncertainty::{kernel_identity_deviation, uncertainty_check, UncertaintyReport};
pub use xi::{cell_in_parabola_neighborhood, xi_support_cells};
