//! Standing waves of the focusing NLS `i∂ₜψ = −∂²ₓψ − |ψ|^{2σ}ψ` on the line
//! with a point interaction at the origin combining a jump `u(0⁺) = τu(0⁻)`
//! and a delta term of strength `α`.
//!
//! - [`oracle`]: adaptive quadrature and the profile integrals.
//! - [`profiles`]: solitons on the line and their mass/energy.
//! - [`stationary`]: closed-form positive stationary states (branches L and R).
//! - [`critical`]: constants and regime classification at `σ = 2`.
//! - [`variational`]: grid discretization, constrained minimization,
//!   rearrangement and Gagliardo-Nirenberg quotients.
//! - [`verify`]: the acceptance checks, shared by tests and the CLI.

pub mod critical;
pub mod error;
pub mod oracle;
pub mod profiles;
pub mod stationary;
pub mod sweep;
pub mod variational;
pub mod verify;

pub use critical::{
    classify_mass_regime, critical_data, dipole_critical_states, CriticalData, Infimum,
    RegimeReport,
};
pub use error::{Error, Result};
pub use oracle::Quadrature;
pub use profiles::{soliton_by_mass, soliton_mass, ModelParams, SolitonProfile};
pub use stationary::{
    branch_mass, branch_mass_derivative, identify_ground_state, multiplicity, solve_branch,
    state_by_mass, Branch, GroundState, StationaryState, Thresholds,
};
pub use sweep::{sweep_branches, SweepRow, SweepSpec};
pub use variational::{GridFunction, MinimizationReport};
pub use verify::{run_checks, CheckOutcome};
