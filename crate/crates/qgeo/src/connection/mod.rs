//! Bimodule connections, derived braidings, geodesic-velocity
//! verification, torsion/curvature and the generalized metric.

mod checks;
mod structures;
mod suites;

pub use checks::{
    invariant_one_forms,
    check_sigma_bimodule, check_vector_field_bimodule, curvature, descent_check,
    geodesic_velocity_check, invariant_structure_check, omega_tilde_check, torsion,
};
pub use structures::{
    build_hamiltonian, derive_sigma, heisenberg_connection, heisenberg_metric,
    heisenberg_vector_field, kg_connection, kg_sigma_expected, kg_vector_field, sigma_expected,
    Connection, MetricG, MetricPiece, Mutation, SigmaError, SigmaTable, VectorField,
};
pub use suites::{
    available_suites, mutation_battery, run_suite, run_suite_mutated, run_suite_with_options,
    suite_ids, SuiteError,
};
