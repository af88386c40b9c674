//! Classical extended-phase-space geometry in constant-omega coordinates
//! with flat base connection: induced metric, extended connection,
//! autoparallel/Hamiltonian equivalence, and the semiclassical comparison
//! with the quantum calculus.

mod geometry;
mod integrate;
mod poly;
mod semiclassical;

pub use geometry::{
    check_geometry, extended_connection, hamiltonian_vector_field, induced_metric,
    symmetric_extension, torsion_classical, ClassicalTensor, PhaseSpec,
};
pub use integrate::{
    geodesic_integrate, hamilton_integrate, max_deviation, IntegrateError, Trajectory,
};
pub use poly::Poly;
pub use semiclassical::{semiclassical_compare, SemiclassicalOutcome, SignConvention};
