//! Damped two-level dynamics obtained by analytic continuation of undamped
//! Bloch solutions.
//!
//! Continuing a Bloch solution to the complex gyromagnetic factor
//! `gamma / (1 - i alpha)` and projecting its stereographic image back to the
//! real sphere yields a solution of the Landau-Lifshitz-Gilbert equation with
//! damping `alpha`. This crate provides the state conversions, the analytic
//! families, the equations of motion with an RK4 driver for cross-checks, a
//! small Bessel library, and the two damped experiments built on top.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closedform;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod pulses;
pub mod specfun;
pub mod state;

pub use closedform::{
    bloch_to_llg, bloch_to_llg_with_rate, FamilyId, LinearXSolution, PrecessionSolution, SolutionFamily,
};
pub use dynamics::{integrate, EvolutionConfig, Trajectory};
pub use error::{Error, Result};
pub use pulses::{Pulse, TabulatedField};
pub use state::{
    ComplexSpinVector, DampedGyro, DensityMatrix2, SpinVector, StereoPoint, Vec3, WaveFunction2, EPS_POLE, STATE_TOL,
};
