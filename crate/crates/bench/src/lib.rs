//! Shared fixtures for the criterion benches.

use num_complex::Complex64;
use spinlift::{DampedGyro, EvolutionConfig, LinearXSolution, PrecessionSolution, Pulse, SolutionFamily, Vec3};

/// Bessel arguments spread over the series domain.
pub fn bessel_arguments() -> Vec<Complex64> {
    (1..=16).map(|k| Complex64::new(1.8 * k as f64, 0.05 * k as f64)).collect()
}

/// Damped precession over `[0, 10]` with the given step.
pub fn precession_run(dt: f64) -> (EvolutionConfig, Vec3) {
    let gyro = DampedGyro::new(1.0, 0.1).expect("valid damping");
    let cfg = EvolutionConfig::new(0.0, 10.0, dt, gyro, Pulse::constant_z(1.0).expect("finite field"))
        .expect("valid configuration");
    (cfg, Vec3::from_angles(1.0, 1.2, 0.0))
}

pub fn families() -> Vec<SolutionFamily> {
    let precession = PrecessionSolution::new(1.0, 1.2, 0.3, 1.0, 1.0, 0.0).expect("valid precession");
    let pulse = Pulse::sech(1.5, 1.0, 2.0).expect("valid pulse");
    let linear = LinearXSolution::from_angles(1.0, 0.9, 0.4, 1.0, 0.0, pulse).expect("off the pole");
    vec![SolutionFamily::Precession(precession), SolutionFamily::LinearX(linear)]
}
