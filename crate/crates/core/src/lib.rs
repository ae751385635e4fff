//! Inertial–acoustic waves in a rotating compressible fluid: closed-form
//! dispersion theory, exact plane-wave eigenmodes, a pseudo-spectral
//! simulator of the linearized equations, and the oracles that verify
//! each layer against the next.
//!
//! Modules:
//! - [`dispersion`] — the quartic dispersion relation and everything
//!   derived from it (branches, group/phase velocities, forbidden zone,
//!   characteristic cone).
//! - [`planewave`] — polarization relations and eigenmode construction.
//! - [`simulator`] — RK4 time stepping with spectral derivatives on a
//!   doubly periodic grid.
//! - [`verify`] — independent oracles: brute-force roots, finite
//!   differences, spectral peak extraction, operator residuals.
//! - [`sweep`] — batch dispersion evaluation over (θ, k) grids.
//! - [`suite`] — the named verification checks behind `rotowave verify`.
//!
//! The `parallel` feature (on by default) runs batch work on rayon;
//! disabling it yields a fully sequential build with identical results.

mod dd;
pub mod dispersion;
mod par;
pub mod planewave;
pub mod simulator;
pub mod suite;
pub mod sweep;
pub mod verify;

pub use dispersion::{
    Branch, DispersionBranches, DispersionError, FluidParams, PropagationRegime, Velocity2,
    WaveVector, WavenumberResult,
};
pub use planewave::{ModeError, PlaneWaveMode};
pub use simulator::{FieldState, Grid, RunRecord, SimConfig, SimError};
pub use suite::{CheckResult, CheckStatus, Scope};
pub use verify::{FrequencyEstimate, VerifyError};
