//! Free evolution of a particle released from a one-dimensional box.
//!
//! The walls of an infinite square well on `[0, L]` are removed at `t = 0`.
//! This crate evaluates the released wavefunction, the probability density
//! and current, Bohmian trajectories guided by `v = j / rho`, and
//! arrival-time distributions at a detector point.
//!
//! Units are kg, um and ms throughout (see [`scenario`]).
//!
//! Grid and ensemble work runs on rayon when the `parallel` feature is on
//! (the default); [`exec::Execution`] selects the path per call.

pub mod arrival;
pub mod bohmian;
pub mod config;
pub mod error;
pub mod exec;
pub mod observables;
pub mod quadrature;
pub mod scenario;
pub mod special;
pub mod wavefunction;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use scenario::{BoxGeometry, GridSpec, InitialState, PhysicalConstants, Scenario};
pub use wavefunction::{WaveSample, Wavefunction};
