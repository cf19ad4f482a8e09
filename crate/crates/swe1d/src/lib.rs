//! One-dimensional shallow water solver over variable bottom topography.
//!
//! Two fifth-order WENO finite volume schemes share this crate: one balances
//! water at rest exactly, the other balances steady flowing water (constant
//! discharge and energy head) exactly. A deliberately naive first-order
//! scheme is included as a comparison baseline, together with a harness that
//! runs benchmark channels, measures deviations from steady profiles, and
//! writes CSV reports.

pub mod bathymetry;
pub mod boundary;
pub mod cases;
pub mod config;
pub mod convergence;
pub mod equilibrium;
pub mod error;
pub mod grid;
pub mod profile;
pub mod quadrature;
pub mod report;
pub mod run;
pub mod schemes;
pub mod state;
pub mod timestep;
pub mod weno;

/// Gravitational acceleration, fixed for every case in the benchmark suite.
pub const GRAVITY: f64 = 9.812;

pub use cases::{BoundarySpec, CaseSpec, FlowCase};
pub use equilibrium::{EquilibriumVars, FlowRegime};
pub use error::SolverError;
pub use grid::Grid;
pub use state::ConservedState;
pub use timestep::Scheme;
