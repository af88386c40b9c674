//! Verification engine and simulator for quantum geodesic structures on
//! Heisenberg algebras.
//!
//! The symbolic half ([`ncalg`], [`calculus`], [`connection`]) proves the
//! differential-calculus, connection and metric identities of the
//! quantum-geodesic formulation of Schroedinger and Klein-Gordon flows by
//! exact canonical-form rewriting. The numeric half ([`flow`], [`phase`])
//! reproduces the flows themselves: harmonic-oscillator Schroedinger
//! evolution, anti-Heisenberg and non-standard flows, the relativistic
//! proper-time wave packet, the hydrogen-like spectrum, and the classical
//! extended-phase-space geometry.

pub mod calculus;
pub mod connection;
pub mod flow;
pub mod phase;
pub mod ncalg;
pub mod oracle;
pub mod report;
pub mod scalar;
