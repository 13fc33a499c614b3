//! Controllability analysis and minimum-energy steering for a satellite
//! moving under the J2 zonal harmonic, in cylindrical coordinates.
//!
//! The satellite state is expressed as a six-dimensional deviation from a
//! circular reference orbit of radius `sigma` rotating at rate `omega`.
//! Thrusters may be placed in any nonempty subset of the radial, transverse
//! and axial directions; for each of the seven configurations the library
//! builds the linearized model, runs the Kalman rank test, computes the
//! controllability Gramian and, for the controllable configurations,
//! synthesizes the minimum-energy open-loop steering control.
//!
//! The main entry points are:
//! * [`model::PhysicalParams`] and [`model::ThrusterConfig`]
//! * [`linearize::build_model`]
//! * [`controllability::rank_table`]
//! * [`steering::synthesize`]
//! * [`simulate::integrate_linear`] / [`simulate::integrate_nonlinear`]

pub mod controllability;
pub mod dynamics;
pub mod error;
pub mod linearize;
pub mod model;
pub mod numkit;
pub mod simulate;
pub mod steering;

pub use error::Error;
pub use model::{ControlVec, PhysicalParams, PhysicalState, StateVec, ThrusterConfig};
