//! Numerical quantum geodesic flows: Schroedinger evolution with
//! expectation-identity checks, anti-Heisenberg and non-standard flows,
//! the relativistic proper-time wave packet, and the hydrogen-like
//! spectrum.

mod antiheis;
mod grid;
mod hydrogen;
mod nonstandard;
mod packet;
mod series;
mod sho;

pub use antiheis::{anti_heisenberg_evolve, damped_identity_residual, AntiHeisConfig};
pub use grid::{Grid, WaveFunction};
pub use hydrogen::{
    defect_scan, effective_potential, hydrogen_delta_l, hydrogen_energy, onshell_u, r_crit,
    radial_shoot,
    HydrogenConfig, HydrogenError, ShootResult,
};
pub use nonstandard::{nonstandard_flow_evolve, NonstandardResult};
pub use packet::{packet_evolve, packet_samples, PacketConfig, PacketResult};
pub use series::{affine_fit, summarize, AffineFit, TimeSeries};
pub use sho::{check_dexpdt, sho_evolve, ShoConfig, ShoResult};
