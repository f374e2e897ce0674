//! Equations of motion, the RK4 driver, trajectory CSV and residual checks.

mod export;
mod integrate;
mod rhs;
mod verify;

pub use export::{format_value, read_trajectory, write_csv, write_trajectory, CsvRow};
pub use integrate::{
    integrate, Bloch, DampedDensity, DampedWavefunction, Evolution, EvolutionConfig, Llg, OdeState, Riccati,
    Schrodinger, Trajectory, MAX_DRIFT,
};
pub use rhs::{
    bloch_rhs, damped_density_defect, damped_density_rhs, damped_wavefunction_rhs, gauge_phase, gauge_phase_from_area,
    gilbert_residual, llg_rhs, riccati_rhs, schrodinger_rhs, von_neumann_rhs, NORM_TOL, PURITY_TOL,
};
pub use verify::{llg_residual, stencil_derivative, ResidualReport};
