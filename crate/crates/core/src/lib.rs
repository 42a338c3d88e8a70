//! Steady-state radiance of two coherently driven two-level atoms sharing a
//! single lossy cavity mode.
//!
//! The crate builds the Lindblad generator of the atom–cavity system, solves
//! for its unique steady state with a certified Fock cutoff, and compares the
//! two-atom photon number against an independent single-atom reference. The
//! resulting witness `R = (n₂ − 2n₁) / 2n₁` sorts each parameter point into one
//! of six radiance classes; [`sweep`] runs that pipeline over parameter grids.

pub mod error;
pub mod model;
pub mod operators;
pub mod steady;
pub mod sweep;
pub mod witness;

pub use error::{Error, Result};
pub use model::SystemParams;
pub use steady::{converge_cutoff, steady_state, SteadyStateResult, Superoperator};
pub use witness::{classify, radiance_witness, RadianceClass, RadiancePoint};

/// Complex scalar used throughout.
pub use faer::c64;
