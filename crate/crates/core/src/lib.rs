//! Entanglement between an inertial observer's mode and the outgoing and
//! horizon-infalling modes of a scalar field in a Vaidya collapse spacetime.
//!
//! * [`fock_space`]: truncated Alice ⊗ out ⊗ hor bases.
//! * [`collapse_state`]: squeezing, |Ψ⟩, reduced density matrices, thermal reduction.
//! * [`entanglement`]: partial transpose, spectra, negativity with adaptive truncation.
//! * [`bogoliubov`]: closed-form Bogoliubov coefficients and a complex log-Gamma.
//! * [`sweep`]: parameter sweeps, configuration and CSV output for the CLI.

pub mod bogoliubov;
pub mod collapse_state;
pub mod entanglement;
pub mod error;
pub mod fock_space;
pub mod sweep;

pub use collapse_state::{Channel, ModeSplit, SqueezingParams};
pub use entanglement::{ConvergencePolicy, NegativityResult};
pub use error::{Error, Result};
pub use fock_space::Truncation;
