//! Qubit-photon bound-state bands of a one-dimensional superconducting
//! quantum metamaterial.
//!
//! A chain of charge qubits inside a two-stripe superconducting transmission
//! line hosts, besides the free qubit-photon continuum, two bands of bound
//! states: a qubit-like band far above the photon line and a photon-like band
//! pinned slightly below it. This crate computes both bands from the
//! transcendental bound-state equation and independently verifies them by
//! exact diagonalization of the projected Hamiltonian on finite rings.
//!
//! * [`params`] — physical, energy-scale and dimensionless parameterizations
//!   and the machine-precision consistency checks between them.
//! * [`spectrum`] — continuum edges, photon line, effective coupling and the
//!   bracketed bisection solver for both bound-state bands.
//! * [`oracle`] — finite-ring exact diagonalization (full real-space and
//!   per-momentum blocks), bound-state extraction and solver comparison.
//! * [`report`] — serializable scan records and invariant re-checks.

pub mod error;
pub mod oracle;
pub mod params;
pub mod report;
pub mod spectrum;

pub use error::{Error, Result};
pub use params::{DimensionlessParams, EnergyScales, NormalizedParams, PhysicalParams};
pub use spectrum::{scan_bands, Band, BandPoint, BandStructure, KGrid, Momentum};
