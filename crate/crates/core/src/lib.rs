//! Slip-wall boundary conditions for the compressible Euler equations.
//!
//! - [`euler`]: state conversions, physical fluxes and the entropy pair.
//! - [`linear`]: symmetrized linearized system and energy boundary terms.
//! - [`wall`]: closed-form wall pressures `P*/P` and the entropy boundary term.
//! - [`riemann`]: general Riemann solvers used as an independent check of the wall closed forms.
//! - [`dgsem`]: 1D flux-differencing DGSEM harness with wall boundaries and entropy budgets.
//! - [`sweep`]: `Ma_n` sweeps of `P*/P` and `delta_s`, with CSV and SVG output.
//! - [`verify`]: seeded property suite.
//! - [`cli`]: the `slipwall` command-line front end.

pub mod cli;
pub mod dgsem;
pub mod error;
pub mod euler;
pub mod linear;
pub mod riemann;
pub mod sweep;
pub mod verify;
pub mod wall;

pub use error::{Error, Result};
pub use euler::{ConservativeState, GasModel, NormalFlux, PrimitiveState, UnitNormal, Vec3};
pub use wall::WallFluxKind;
