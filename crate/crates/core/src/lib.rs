//! Finite-volume solvers for 1D conservation laws that carry forward-mode
//! tangents of both the solution field and tracked shock positions.
//!
//! A run propagates a [`Dual`] per cell, so one simulation yields the field
//! `U` and its tangent `U̇`. Shock positions are integrated alongside the
//! field by a characteristic-speed ODE, while their tangents come from a
//! custom Rankine-Hugoniot probe rule ([`tracker::TrackMode::Shock`]) or,
//! for comparison, from naive differentiation ([`tracker::TrackMode::BlackBox`]).
//!
//! Module map:
//! - [`dual`]: dual numbers and the custom-tangent hook
//! - [`mesh`]: grid, cell averages and reconstructions
//! - [`flux`]: Burgers and Euler flux models, moving-shock Riemann setup
//! - [`solver`]: explicit time stepping (Lax-Friedrichs, Godunov, Rusanov)
//! - [`tracker`]: shock position ODE and tangent rules
//! - [`oracle`], [`tangent`]: analytic references, tangential shift, norms
//! - [`harness`]: experiment cases, sweeps and CSV output

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dual;
pub mod error;
pub mod flux;
pub mod harness;
pub mod mesh;
pub mod oracle;
pub mod solver;
pub mod tangent;
pub mod tracker;

pub use dual::Dual;
pub use error::{Error, Result};
pub use flux::{Burgers, Conserved, EulerState, Gas, MovingShockSetup, ScalarModel};
pub use mesh::{CellField, Grid1D, Piecewise, Side};
pub use solver::{DtMode, Observer, Scheme, SchemeConfig, ScalarScheme};
pub use tracker::{ShockState, ShockTracker, TrackMode, TrackerConfig};
