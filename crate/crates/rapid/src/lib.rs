//! Multi-agent racing as a constrained dynamic potential game.
//!
//! The racing interaction between `N` agents is modeled as a constrained
//! general-sum dynamic game in which every agent minimizes its own cost
//! (negative track progress plus a weighted proximity term). That game admits
//! a potential function, so a generalized Nash equilibrium can be computed by
//! solving a *single* constrained optimal control problem over all agents'
//! controls instead of `N` coupled ones. This crate implements:
//!
//! - [`dynamics`]: Dubins-car and 3D velocity-integrator models, joint
//!   rollouts, and analytic step Jacobians;
//! - [`track`]: arc-length-parameterized centerlines, closest-point
//!   projection, the progress measure and boundary constraint;
//! - [`game`]: per-agent costs, the potential function, the stacked
//!   inequality constraints, and equilibrium verification helpers;
//! - [`optimizer`]: a from-scratch augmented-Lagrangian solver with projected
//!   L-BFGS inner iterations, plus the joint and best-response problem
//!   builders;
//! - [`planners`]: the `rapid` potential-game planner with adaptive
//!   aggressiveness scaling, a reactive MPC baseline, and an iterative
//!   best-response baseline;
//! - [`sim`]: the receding-horizon race engine with collision/off-track/finish
//!   event detection;
//! - [`harness`]: seeded benchmarks, scaling studies, and the verification
//!   suite behind the `rapid verify` CLI subcommand.

pub mod dynamics;
pub mod game;
pub mod harness;
mod math;
pub mod optimizer;
pub mod planners;
pub mod sim;
pub mod track;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric input was NaN or infinite.
    #[error("non-finite value in field `{field}`: {value}")]
    NonFinite { field: &'static str, value: f64 },
    /// Inconsistent sizes, invalid parameters, or malformed configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// A precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The solver observed non-finite callback values.
    #[error("solver error: {0}")]
    Solver(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
