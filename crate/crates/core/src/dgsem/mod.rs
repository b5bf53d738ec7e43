//! One-dimensional flux-differencing DGSEM with configurable wall fluxes.
//!
//! Used to exercise the wall procedures inside a full nonlinear scheme:
//! impulsive starts, entropy conservation with `P* = P`, and the entropy
//! budget split into interior and wall contributions.

pub mod config;
pub mod ec_flux;
pub mod lgl;
pub mod solver;

pub use config::{Boundary, InitialCondition, InterfaceFlux, SolverConfig};
pub use ec_flux::{ec_flux, ec_volume_flux, ln_mean};
pub use lgl::{derivative_matrix, lgl_nodes_weights, LglBasis};
pub use solver::{
    cfl_steps, dg_rhs, run_simulation, run_simulation_steps, simulate, BudgetRow, Discretization,
    EntropyBudget, RhsEvaluation, SimulationOutput, SimulationRun, SolutionField,
};
